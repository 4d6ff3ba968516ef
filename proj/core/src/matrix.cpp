#include "genrank/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace genrank {

double operator_norm(const CMat& m) {
    if (m.rows() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

double tuple_norm(const HermitianTuple& t) {
    double r = 0.0;
    for (const auto& e : t.entries) r = std::max(r, operator_norm(e));
    return r;
}

double tuple_distance(const HermitianTuple& a, const HermitianTuple& b) {
    if (a.k() != b.k() || a.n != b.n)
        throw LengthMismatch("tuple_distance: shape mismatch");
    double r = 0.0;
    for (int i = 0; i < a.k(); ++i)
        r = std::max(r, operator_norm(a.entries[i] - b.entries[i]));
    return r;
}

double hermitian_tolerance(const CMat& h) {
    return 1e-10 * std::max(1.0, operator_norm(h));
}

bool is_hermitian(const CMat& h) {
    return operator_norm(CMat(h - h.adjoint())) <= hermitian_tolerance(h);
}

double PiecewiseLinearFn::operator()(double x) const {
    const auto& bp = breakpoints;
    if (bp.empty()) return 0.0;
    if (x <= bp.front()) return values.front();
    if (x >= bp.back()) return values.back();
    auto it = std::upper_bound(bp.begin(), bp.end(), x);
    std::size_t j = static_cast<std::size_t>(it - bp.begin());
    double x0 = bp[j - 1], x1 = bp[j];
    double t = (x - x0) / (x1 - x0);
    return values[j - 1] + t * (values[j] - values[j - 1]);
}

SpectralData spectral_decomposition(const CMat& h) {
    if (!is_hermitian(h))
        throw NonHermitianInput("spectral_decomposition: input exceeds Hermitian tolerance");
    CMat sym = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(sym);
    SpectralData out;
    out.eigenvalues = es.eigenvalues();
    out.unitary = es.eigenvectors();
    // Deterministic phase: rotate each column so its largest-magnitude
    // component is real positive.
    for (int j = 0; j < out.unitary.cols(); ++j) {
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < out.unitary.rows(); ++i) {
            double a = std::abs(out.unitary(i, j));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        std::complex<double> z = out.unitary(imax, j);
        if (std::abs(z) > 0) out.unitary.col(j) *= std::conj(z) / std::abs(z);
    }
    return out;
}

CMat apply_function(const CMat& h, const PiecewiseLinearFn& f) {
    SpectralData sd = spectral_decomposition(h);
    RVec fv(sd.eigenvalues.size());
    for (int i = 0; i < fv.size(); ++i) fv(i) = f(sd.eigenvalues(i));
    return sd.unitary * fv.asDiagonal() * sd.unitary.adjoint();
}

HermitianTuple direct_sum_tuples(const HermitianTuple& a, const HermitianTuple& b) {
    if (a.k() != b.k())
        throw LengthMismatch("direct_sum_tuples: tuples have different lengths");
    HermitianTuple out;
    out.n = a.n + b.n;
    out.entries.reserve(a.entries.size());
    for (int i = 0; i < a.k(); ++i) {
        CMat m = CMat::Zero(out.n, out.n);
        m.topLeftCorner(a.n, a.n) = a.entries[i];
        m.bottomRightCorner(b.n, b.n) = b.entries[i];
        out.entries.push_back(std::move(m));
    }
    return out;
}

std::vector<CMat> complexify_tuple(const HermitianTuple& t) {
    if (t.k() % 2 != 0)
        throw OddLength("complexify_tuple: tuple length must be even");
    int m = t.k() / 2;
    std::vector<CMat> out;
    out.reserve(m);
    for (int j = 0; j < m; ++j)
        out.push_back(t.entries[j] + std::complex<double>(0, 1) * t.entries[m + j]);
    return out;
}

HermitianTuple random_hermitian_tuple(int n, int k, std::uint64_t seed) {
    if (n < 1) throw InvalidSize("random_hermitian_tuple: n must be >= 1");
    if (k < 0) throw InvalidSize("random_hermitian_tuple: k must be >= 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    HermitianTuple out;
    out.n = n;
    out.entries.reserve(static_cast<std::size_t>(k));
    for (int e = 0; e < k; ++e) {
        CMat g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double x = gauss(rng);
                double y = gauss(rng);
                g(i, j) = std::complex<double>(x, y) * inv_sqrt2;
            }
        out.entries.push_back((g + g.adjoint()) / 2.0);
    }
    return out;
}

}  // namespace genrank
