#include "genrank/stratification.hpp"

#include <algorithm>
#include <random>

#include "genrank/constructions.hpp"

namespace genrank {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

long sum_dsq(const OrbitType& omega) {
    long s = 0;
    for (auto [d, m] : omega.summands) s += static_cast<long>(d) * d;
    return s;
}

}  // namespace

bool omega_valid(const OrbitType& omega, int n) {
    if (omega.summands.empty()) return false;
    long w = 0;
    for (auto [d, m] : omega.summands) {
        if (d < 1 || m < 1) return false;
        w += static_cast<long>(d) * m;
    }
    return w <= n;
}

std::vector<OrbitType> enumerate_orbit_types(int n) {
    if (n < 1) throw InvalidSize("enumerate_orbit_types: n must be >= 1");
    // All (d, m) with d*m <= n, descending, then multisets in that order.
    std::vector<std::pair<int, int>> pairs;
    for (int d = 1; d <= n; ++d)
        for (int m = 1; d * m <= n; ++m) pairs.emplace_back(d, m);
    std::sort(pairs.begin(), pairs.end(), std::greater<>());

    std::vector<OrbitType> out;
    std::vector<std::pair<int, int>> cur;
    auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
        if (!cur.empty()) {
            out.push_back(OrbitType{cur});
        }
        for (std::size_t i = start; i < pairs.size(); ++i) {
            int w = pairs[i].first * pairs[i].second;
            if (w > remaining) continue;
            cur.push_back(pairs[i]);
            self(self, i, remaining - w);
            cur.pop_back();
        }
    };
    rec(rec, 0, n);
    return out;
}

StratumReport stratum_dimensions(int n, int k, const OrbitType& omega) {
    if (n < 1 || k < 2)
        throw InvalidOmega("stratum_dimensions: need n >= 1 and k >= 2");
    if (!omega_valid(omega, n))
        throw InvalidOmega("stratum_dimensions: omega does not fit inside M_n");
    StratumReport r;
    r.omega = omega;
    std::sort(r.omega.summands.begin(), r.omega.summands.end(), std::greater<>());
    long dsq = sum_dsq(omega);
    r.preimage_dim_bound = static_cast<long>(n) * n + static_cast<long>(k - 1) * dsq;
    r.orbit_dim_bound = static_cast<long>(n) * n - dsq;
    r.is_full = r.omega.is_full(n);
    return r;
}

long complement_dimension(int n, int k) {
    if (n < 2 || k < 2) throw InvalidSize("complement_dimension: need n >= 2 and k >= 2");
    long formula = static_cast<long>(k) * n * n - static_cast<long>(k - 1) * (2 * n - 2);
    long scan = -1;
    for (const auto& omega : enumerate_orbit_types(n)) {
        if (omega.is_full(n)) continue;
        scan = std::max(scan, stratum_dimensions(n, k, omega).preimage_dim_bound);
    }
    if (scan != formula)
        throw FormulaMismatch("complement_dimension: stratum scan disagrees with formula");
    return formula;
}

long density_threshold(int n, int k) {
    if (n < 2 || k < 2) throw InvalidSize("density_threshold: need n >= 2 and k >= 2");
    return static_cast<long>(k - 1) * (2 * n - 2);
}

McReport mc_generation_rate(int n, int k, int samples, std::uint64_t seed) {
    if (n < 1 || k < 1 || samples < 1)
        throw InvalidSize("mc_generation_rate: need n, k, samples >= 1");
    McReport r;
    r.samples = samples;
    for (int i = 0; i < samples; ++i) {
        HermitianTuple t = random_hermitian_tuple(n, k, splitmix(seed + static_cast<std::uint64_t>(i)));
        try {
            if (is_generating(t)) ++r.generating;
        } catch (const ToleranceAmbiguity&) {
            ++r.ambiguous;
        }
    }
    int decided = r.samples - r.ambiguous;
    r.rate = decided > 0 ? static_cast<double>(r.generating) / decided : 0.0;
    return r;
}

HermitianTuple canonical_representative_tuple(const OrbitType& omega, int n, int k,
                                              std::uint64_t seed) {
    if (!omega_valid(omega, n))
        throw InvalidOmega("canonical_representative_tuple: omega does not fit inside M_n");
    if (k < 2) throw InvalidOmega("canonical_representative_tuple: need k >= 2");
    OrbitType om = omega;
    std::sort(om.summands.begin(), om.summands.end(), std::greater<>());

    HermitianTuple out;
    out.n = n;
    for (int e = 0; e < k; ++e) out.entries.push_back(CMat::Zero(n, n));

    // Summand j contributes a canonical pair shifted into the spectral
    // window (2j+2, 2j+3], so the first entry is invertible and no two
    // summand blocks can be jointly unitarily equivalent. Each d-block
    // is repeated m times to realize embedding multiplicity. Entries
    // beyond the first two are random elements of the same block algebra,
    // which leave the generated subalgebra unchanged.
    int pos = 0;
    int j = 0;
    for (auto [d, m] : om.summands) {
        CMat a, b;
        if (d == 1) {
            a = CMat::Constant(1, 1, 0.5);
            b = CMat::Ones(1, 1);
        } else {
            HermitianTuple pair = canonical_pair(d);
            a = pair.entries[0];
            b = pair.entries[1];
        }
        a += 2.0 * (j + 1) * CMat::Identity(d, d);

        std::mt19937_64 rng(splitmix(seed ^ (0x5851f42d4c957f2dULL * static_cast<std::uint64_t>(j + 1))));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<CMat> extra;
        for (int e = 2; e < k; ++e) {
            CMat g(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    g(r, c) = std::complex<double>(gauss(rng), gauss(rng)) / std::sqrt(2.0);
            extra.push_back(((g + g.adjoint()) / 2.0).eval());
        }

        for (int rep = 0; rep < m; ++rep) {
            out.entries[0].block(pos, pos, d, d) = a;
            out.entries[1].block(pos, pos, d, d) = b;
            for (int e = 2; e < k; ++e)
                out.entries[static_cast<std::size_t>(e)].block(pos, pos, d, d) =
                    extra[static_cast<std::size_t>(e - 2)];
            pos += d;
        }
        ++j;
    }
    return out;
}

}  // namespace genrank
