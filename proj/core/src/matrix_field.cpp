#include "genrank/matrix_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "genrank/generation.hpp"

namespace genrank {

namespace {

void check_shapes(const HermitianTuple& t1, const HermitianTuple& t2) {
    if (t1.n != t2.n) throw InvalidSize("orbit comparison: tuples have different sizes");
    if (t1.k() != t2.k())
        throw LengthMismatch("orbit comparison: tuples have different lengths");
    for (const auto& e : t1.entries)
        if (!is_hermitian(e)) throw NonHermitianInput("orbit comparison: entry not Hermitian");
    for (const auto& e : t2.entries)
        if (!is_hermitian(e)) throw NonHermitianInput("orbit comparison: entry not Hermitian");
}

double common_scale(const HermitianTuple& t1, const HermitianTuple& t2) {
    double s = 0.0;
    for (const auto& e : t1.entries) s = std::max(s, operator_norm(e));
    for (const auto& e : t2.entries) s = std::max(s, operator_norm(e));
    return s;
}

// Compares word traces per cyclic class through length max_len, walking
// the tree of necklace prefixes so products are shared along prefixes
// and each cyclic class is visited once (at its lexicographically
// smallest word, whose length is a multiple of the word's period).
bool trace_scan_equal(const std::vector<CMat>& w1, const std::vector<CMat>& w2, int n,
                      int max_len) {
    const int k = static_cast<int>(w1.size());
    std::vector<double> tau(static_cast<std::size_t>(max_len) + 1);
    for (int l = 0; l <= max_len; ++l) tau[static_cast<std::size_t>(l)] = 1e-6 * std::ldexp(1.0, l);

    std::vector<int> a(static_cast<std::size_t>(max_len) + 1, 0);
    std::vector<CMat> p1(static_cast<std::size_t>(max_len) + 1, CMat(n, n));
    std::vector<CMat> p2(static_cast<std::size_t>(max_len) + 1, CMat(n, n));

    auto rec = [&](auto&& self, int t, int period) -> bool {
        if (t % period == 0) {
            std::complex<double> d =
                p1[static_cast<std::size_t>(t)].trace() - p2[static_cast<std::size_t>(t)].trace();
            if (std::abs(d) > tau[static_cast<std::size_t>(t)]) return false;
        }
        if (t == max_len) return true;
        for (int c = a[static_cast<std::size_t>(t + 1 - period)]; c < k; ++c) {
            a[static_cast<std::size_t>(t + 1)] = c;
            p1[static_cast<std::size_t>(t + 1)].noalias() =
                p1[static_cast<std::size_t>(t)] * w1[static_cast<std::size_t>(c)];
            p2[static_cast<std::size_t>(t + 1)].noalias() =
                p2[static_cast<std::size_t>(t)] * w2[static_cast<std::size_t>(c)];
            int next_period = (c == a[static_cast<std::size_t>(t + 1 - period)]) ? period : t + 1;
            if (!self(self, t + 1, next_period)) return false;
        }
        return true;
    };

    for (int c0 = 0; c0 < k; ++c0) {
        a[1] = c0;
        p1[1] = w1[static_cast<std::size_t>(c0)];
        p2[1] = w2[static_cast<std::size_t>(c0)];
        // Seed a[1 - period] lookups: with period 1 at depth 1 the next
        // character ranges from a[1] upward, which the array already holds.
        if (!rec(rec, 1, 1)) return false;
    }
    return true;
}

}  // namespace

std::vector<std::complex<double>> word_trace_invariant(const HermitianTuple& t,
                                                       int max_len) {
    if (max_len < 1) throw InvalidSize("word_trace_invariant: max_len must be >= 1");
    if (t.n < 1 || t.k() < 1)
        throw InvalidSize("word_trace_invariant: tuple must be nonempty");
    const int k = t.k();
    std::vector<std::complex<double>> out;
    std::vector<CMat> stack(static_cast<std::size_t>(max_len) + 1);
    stack[0] = CMat::Identity(t.n, t.n);
    auto rec = [&](auto&& self, int depth, int target) -> void {
        if (depth == target) {
            out.push_back(stack[static_cast<std::size_t>(depth)].trace());
            return;
        }
        for (int c = 0; c < k; ++c) {
            stack[static_cast<std::size_t>(depth + 1)].noalias() =
                stack[static_cast<std::size_t>(depth)] * t.entries[static_cast<std::size_t>(c)];
            self(self, depth + 1, target);
        }
    };
    for (int len = 1; len <= max_len; ++len) rec(rec, 0, len);
    return out;
}

std::optional<CMat> find_conjugating_unitary(const HermitianTuple& t1,
                                             const HermitianTuple& t2) {
    check_shapes(t1, t2);
    const int n = t1.n;
    const int k = t1.k();
    if (n < 1) throw InvalidSize("find_conjugating_unitary: empty tuples");
    const double scale = std::max(1.0, common_scale(t1, t2));

    // Joint intertwiner equations t2_j X = X t1_j, vectorized column-major.
    CMat M = CMat::Zero(static_cast<Eigen::Index>(k) * n * n, static_cast<Eigen::Index>(n) * n);
    for (int j = 0; j < k; ++j) {
        const CMat& A = t2.entries[static_cast<std::size_t>(j)];
        const CMat& B = t1.entries[static_cast<std::size_t>(j)];
        Eigen::Index row0 = static_cast<Eigen::Index>(j) * n * n;
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) {
                Eigen::Index row = row0 + r + static_cast<Eigen::Index>(n) * c;
                for (int p = 0; p < n; ++p) {
                    M(row, p + static_cast<Eigen::Index>(n) * c) += A(r, p);
                    M(row, r + static_cast<Eigen::Index>(n) * p) -= B(p, c);
                }
            }
    }

    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0) * scale;
    int null_dim = 0;
    for (Eigen::Index i = sv.size() - 1; i >= 0 && sv(i) <= cut; --i) ++null_dim;
    if (null_dim == 0) return std::nullopt;

    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index cols = svd.matrixV().cols();
    auto candidate = [&](int trial) -> CMat {
        if (trial < null_dim) return svd.matrixV().col(cols - 1 - trial).eval();
        CMat x = CMat::Zero(static_cast<Eigen::Index>(n) * n, 1);
        for (int i = 0; i < null_dim; ++i)
            x += std::complex<double>(gauss(rng), gauss(rng)) * svd.matrixV().col(cols - 1 - i);
        return x;
    };

    const int trials = null_dim + (null_dim > 1 ? 4 : 0);
    for (int trial = 0; trial < trials; ++trial) {
        CMat X = Eigen::Map<const CMat>(candidate(trial).data(), n, n);
        if (X.norm() < 1e-12) continue;
        Eigen::JacobiSVD<CMat> polar(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
        CMat u = polar.matrixU() * polar.matrixV().adjoint();
        double resid = 0.0;
        for (int j = 0; j < k; ++j)
            resid = std::max(resid,
                             operator_norm(u * t1.entries[static_cast<std::size_t>(j)] *
                                               u.adjoint() -
                                           t2.entries[static_cast<std::size_t>(j)]));
        if (resid <= 1e-8 * n * scale) return u;
    }
    return std::nullopt;
}

bool same_unitary_orbit(const HermitianTuple& t1, const HermitianTuple& t2, int max_len) {
    check_shapes(t1, t2);
    const int n = t1.n;
    if (n < 1) throw InvalidSize("same_unitary_orbit: empty tuples");
    if (max_len <= 0) max_len = 2 * n * n;

    double c = common_scale(t1, t2);
    if (c < 1e-300) return true;  // both tuples vanish
    if (find_conjugating_unitary(t1, t2)) return true;

    std::vector<CMat> w1, w2;
    for (const auto& e : t1.entries) w1.push_back(e / c);
    for (const auto& e : t2.entries) w2.push_back(e / c);
    return trace_scan_equal(w1, w2, n, max_len);
}

FieldCheck is_generating_field(const MatrixField& f) {
    if (f.n < 1 || f.k < 1) throw InvalidSize("field: need n >= 1 and k >= 1");
    if (f.points.empty() || f.points.size() != f.values.size())
        throw InvalidSize("field: points and values must align and be nonempty");
    for (const auto& v : f.values) {
        if (v.n != f.n) throw InvalidSize("field: value size differs from field size");
        if (v.k() != f.k) throw LengthMismatch("field: value length differs from field length");
    }
    const int m = static_cast<int>(f.points.size());
    FieldCheck out;

    if (f.n == 1) {
        double scale = 1.0;
        for (const auto& v : f.values)
            for (const auto& e : v.entries) scale = std::max(scale, std::abs(e(0, 0)));
        for (int i = 0; i < m; ++i) {
            double top = 0.0;
            for (const auto& e : f.values[static_cast<std::size_t>(i)].entries)
                top = std::max(top, std::abs(e(0, 0)));
            if (top <= 1e-12 * scale) {
                out.first_non_generating_point = i;
                return out;
            }
        }
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                double diff = 0.0;
                for (int e = 0; e < f.k; ++e)
                    diff = std::max(diff,
                                    std::abs(f.values[static_cast<std::size_t>(i)]
                                                 .entries[static_cast<std::size_t>(e)](0, 0) -
                                             f.values[static_cast<std::size_t>(j)]
                                                 .entries[static_cast<std::size_t>(e)](0, 0)));
                if (diff <= 1e-9 * scale) {
                    out.first_merged_pair_a = i;
                    out.first_merged_pair_b = j;
                    return out;
                }
            }
        out.generating = true;
        return out;
    }

    for (int i = 0; i < m; ++i)
        if (!is_generating(f.values[static_cast<std::size_t>(i)])) {
            out.first_non_generating_point = i;
            return out;
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const auto& a = f.values[static_cast<std::size_t>(i)];
            const auto& b = f.values[static_cast<std::size_t>(j)];
            bool merged;
            if (find_conjugating_unitary(a, b)) {
                merged = true;
            } else {
                out.used_trace_criterion = true;
                merged = same_unitary_orbit(a, b);
            }
            if (merged) {
                out.first_merged_pair_a = i;
                out.first_merged_pair_b = j;
                return out;
            }
        }
    out.generating = true;
    return out;
}

}  // namespace genrank
