#include "genrank/generation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace genrank {

namespace {

Eigen::VectorXcd vec(const CMat& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

CMat unvec(const Eigen::VectorXcd& v, int n) {
    return Eigen::Map<const CMat>(v.data(), n, n);
}

std::complex<double> hs_inner(const CMat& a, const CMat& b) {
    return (a.adjoint() * b).trace();
}

// Two-pass projection of c off the orthonormal span.
CMat residual(const std::vector<CMat>& basis, const CMat& c) {
    CMat r = c;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) r -= hs_inner(b, r) * b;
    return r;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

double span_residual_norm(const SubalgebraSpan& s, const CMat& m) {
    return residual(s.basis, m).norm();
}

SubalgebraSpan generated_algebra(const std::vector<CMat>& generators, int n,
                                 double tol_base) {
    SubalgebraSpan span;
    span.n = n;
    if (n <= 0) throw InvalidSize("generated_algebra: n must be positive");

    // Scaling a generator by a positive constant rescales every word by a
    // positive constant, so the span of words is unchanged; normalizing
    // entry by entry keeps the rank cuts meaningful at any input scale.
    double max_norm = 0.0;
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw InvalidSize("generated_algebra: generator size mismatch");
        max_norm = std::max(max_norm, operator_norm(g));
    }
    std::vector<CMat> gens;
    for (const auto& g : generators) {
        double nm = operator_norm(g);
        if (nm > 1e-14 * std::max(1.0, max_norm)) gens.push_back(g / nm);
    }
    if (gens.empty()) return span;

    // The span of words is *-closed once the generator set is.
    std::vector<CMat> genset;
    for (const auto& g : gens) {
        genset.push_back(g);
        if (operator_norm(CMat(g - g.adjoint())) > 1e-12) genset.push_back(g.adjoint());
    }
    double s = 0.0;
    for (const auto& g : genset) s = std::max(s, operator_norm(g));

    auto admit = [&](const std::vector<CMat>& cands, int L) -> int {
        double tol = tol_base * n * std::pow(1.0 + s, L);
        Eigen::MatrixXcd R(n * n, static_cast<Eigen::Index>(cands.size()));
        for (std::size_t j = 0; j < cands.size(); ++j)
            R.col(static_cast<Eigen::Index>(j)) = vec(residual(span.basis, cands[j]));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        int added = 0;
        for (int j = 0; j < sv.size(); ++j) {
            double sig = sv(j);
            if (sig > 0.1 * tol && sig < 10.0 * tol) {
                std::ostringstream os;
                os << "generated_algebra: singular value " << sig
                   << " inside the ambiguous band around rank cut " << tol
                   << " at word length " << L;
                throw ToleranceAmbiguity(os.str(), sig, tol);
            }
            if (sig > tol) {
                span.basis.push_back(unvec(svd.matrixU().col(j), n));
                ++added;
            }
        }
        return added;
    };

    admit(genset, 1);
    int L = 1;
    while (span.dimension() < n * n) {
        ++L;
        if (L > n * n) break;
        std::vector<CMat> cands;
        cands.reserve(span.basis.size() * genset.size());
        for (const auto& b : span.basis)
            for (const auto& g : genset) cands.push_back(b * g);
        if (admit(cands, L) == 0) break;
    }
    return span;
}

SubalgebraSpan generated_algebra(const HermitianTuple& t, double tol_base) {
    for (const auto& e : t.entries)
        if (!is_hermitian(e))
            throw NonHermitianInput("generated_algebra: tuple entry exceeds Hermitian tolerance");
    return generated_algebra(t.entries, t.n, tol_base);
}

bool is_generating(const HermitianTuple& t, double tol_base) {
    return generated_algebra(t, tol_base).dimension() == t.n * t.n;
}

namespace {

// Orthonormalize an arbitrary spanning set, dropping dependent elements.
std::vector<CMat> orthonormalize(const std::vector<CMat>& mats, int n, double cut) {
    if (mats.empty()) return {};
    Eigen::MatrixXcd R(n * n, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t j = 0; j < mats.size(); ++j)
        R.col(static_cast<Eigen::Index>(j)) = vec(mats[j]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeThinU);
    std::vector<CMat> out;
    for (int j = 0; j < svd.singularValues().size(); ++j)
        if (svd.singularValues()(j) > cut) out.push_back(unvec(svd.matrixU().col(j), n));
    return out;
}

struct CenterResolutionFailed {};

OrbitType classify_once(const std::vector<CMat>& basis, int n, std::uint64_t seed) {
    const int m = static_cast<int>(basis.size());
    const double tau = 1e-7 * n;

    // Unit: least squares for e = sum c_i B_i with e B_j = B_j.
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(m) * n * n, m);
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(m) * n * n);
    for (int j = 0; j < m; ++j) {
        rhs.segment(static_cast<Eigen::Index>(j) * n * n, n * n) = vec(basis[j]);
        for (int i = 0; i < m; ++i)
            A.block(static_cast<Eigen::Index>(j) * n * n, i, n * n, 1) =
                vec(CMat(basis[i] * basis[j]));
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(rhs);
    if ((A * c - rhs).norm() > tau * std::sqrt(static_cast<double>(m)))
        throw NotAnAlgebra("classify_subalgebra: span has no unit");
    CMat e = CMat::Zero(n, n);
    for (int i = 0; i < m; ++i) e += c(i) * basis[i];

    // Center: coefficient-space nullspace of all commutators.
    Eigen::MatrixXcd K(static_cast<Eigen::Index>(m) * n * n, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            K.block(static_cast<Eigen::Index>(j) * n * n, i, n * n, 1) =
                vec(CMat(basis[i] * basis[j] - basis[j] * basis[i]));
    Eigen::JacobiSVD<Eigen::MatrixXcd> ksvd(K, Eigen::ComputeFullV);
    std::vector<CMat> center;
    {
        const auto& sv = ksvd.singularValues();
        double smax = sv.size() ? sv(0) : 0.0;
        for (int j = 0; j < m; ++j) {
            double sig = j < sv.size() ? sv(j) : 0.0;
            if (sig < 1e-8 * std::max(1.0, smax)) {
                CMat z = CMat::Zero(n, n);
                for (int i = 0; i < m; ++i) z += ksvd.matrixV()(i, j) * basis[i];
                center.push_back(z);
            }
        }
    }
    if (center.empty()) throw NotAnAlgebra("classify_subalgebra: empty center");

    // Random Hermitian central element, shifted to keep genuine summands
    // away from the kernel eigenvalue 0.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat z0 = CMat::Zero(n, n);
    for (const auto& z : center)
        z0 += std::complex<double>(gauss(rng), gauss(rng)) * z;
    CMat h = (z0 + z0.adjoint()) / 2.0;
    double hn = operator_norm(h);
    CMat shifted = h + 2.0 * (hn + 1.0) * e;

    Eigen::SelfAdjointEigenSolver<CMat> es(shifted);
    const RVec& ev = es.eigenvalues();
    double scale = std::max(1.0, operator_norm(shifted));
    double gap_tol = 1e-6 * scale;

    // Cluster eigenvalues; require clean separation between clusters.
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || ev(i) - ev(i - 1) > gap_tol) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }
    for (const auto& [b0, e0] : clusters)
        if (ev(e0 - 1) - ev(b0) > gap_tol) throw CenterResolutionFailed{};

    OrbitType omega;
    for (const auto& [b0, e0] : clusters) {
        double mean = 0.0;
        for (int i = b0; i < e0; ++i) mean += ev(i);
        mean /= (e0 - b0);
        if (std::abs(mean) <= gap_tol) continue;  // kernel of the unit
        CMat cols = es.eigenvectors().middleCols(b0, e0 - b0);
        CMat q = cols * cols.adjoint();
        if (residual(basis, q).norm() > 1e-6 * n) throw CenterResolutionFailed{};
        std::vector<CMat> compressed;
        compressed.reserve(basis.size());
        for (const auto& b : basis) compressed.push_back(q * b * q);
        int dsq = static_cast<int>(orthonormalize(compressed, n, 1e-7).size());
        int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dsq))));
        if (d * d != dsq)
            throw NotAnAlgebra("classify_subalgebra: block dimension is not a square");
        double tr = std::real(q.trace());
        int rank = static_cast<int>(std::lround(tr));
        if (std::abs(tr - rank) > 1e-6 || rank % d != 0)
            throw NotAnAlgebra("classify_subalgebra: central projection rank not divisible");
        omega.summands.emplace_back(d, rank / d);
    }
    std::sort(omega.summands.begin(), omega.summands.end(),
              [](auto a, auto b) { return a > b; });
    return omega;
}

}  // namespace

OrbitType classify_subalgebra(const SubalgebraSpan& s, std::uint64_t seed) {
    if (s.dimension() == 0) return {};
    const int n = s.n;
    std::vector<CMat> basis = orthonormalize(s.basis, n, 1e-10);

    const double tau = 1e-7 * n;
    for (const auto& b : basis) {
        if (residual(basis, b.adjoint()).norm() > tau)
            throw NotAnAlgebra("classify_subalgebra: span not closed under adjoints");
        for (const auto& b2 : basis)
            if (residual(basis, CMat(b * b2)).norm() > tau)
                throw NotAnAlgebra("classify_subalgebra: span not closed under products");
    }

    std::uint64_t s0 = seed;
    for (int attempt = 0; attempt < 16; ++attempt) {
        try {
            return classify_once(basis, n, s0);
        } catch (const CenterResolutionFailed&) {
            s0 = splitmix(s0);
        }
    }
    throw NotAnAlgebra("classify_subalgebra: center eigenvalues could not be separated");
}

SubalgebraSpan commutant(const SubalgebraSpan& s) {
    const int n = s.n;
    SubalgebraSpan out;
    out.n = n;
    if (s.dimension() == 0) {
        // Everything commutes with the zero span.
        for (int q = 0; q < n; ++q)
            for (int p = 0; p < n; ++p) {
                CMat E = CMat::Zero(n, n);
                E(p, q) = 1.0;
                out.basis.push_back(E);
            }
        return out;
    }
    const int m = s.dimension();
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(m) * n * n, n * n);
    for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p) {
            CMat E = CMat::Zero(n, n);
            E(p, q) = 1.0;
            for (int j = 0; j < m; ++j)
                M.block(static_cast<Eigen::Index>(j) * n * n, q * n + p, n * n, 1) =
                    vec(CMat(E * s.basis[j] - s.basis[j] * E));
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    for (int j = 0; j < n * n; ++j) {
        double sig = j < sv.size() ? sv(j) : 0.0;
        if (sig < 1e-8 * std::max(1.0, smax))
            out.basis.push_back(unvec(svd.matrixV().col(j), n));
    }
    return out;
}

namespace {

// Real basis of the anti-Hermitian matrices in M_n (n^2 directions).
std::vector<CMat> anti_hermitian_basis(int n) {
    std::vector<CMat> params;
    params.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        CMat E = CMat::Zero(n, n);
        E(i, i) = std::complex<double>(0, 1);
        params.push_back(E);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            CMat E = CMat::Zero(n, n);
            E(i, j) = 1.0;
            E(j, i) = -1.0;
            params.push_back(E);
            CMat F = CMat::Zero(n, n);
            F(i, j) = std::complex<double>(0, 1);
            F(j, i) = std::complex<double>(0, 1);
            params.push_back(F);
        }
    return params;
}

int stabilizer_dim_impl(const SubalgebraSpan& s, bool modulo_span) {
    const int n = s.n;
    const int m = s.dimension();
    if (m == 0) return n * n - 1;
    std::vector<CMat> params = anti_hermitian_basis(n);
    Eigen::MatrixXd M(static_cast<Eigen::Index>(2) * m * n * n, n * n);
    for (std::size_t p = 0; p < params.size(); ++p) {
        for (int j = 0; j < m; ++j) {
            CMat c = params[p] * s.basis[j] - s.basis[j] * params[p];
            if (modulo_span) c = residual(s.basis, c);
            Eigen::VectorXcd v = vec(c);
            M.block(static_cast<Eigen::Index>(2) * j * n * n, static_cast<Eigen::Index>(p),
                    n * n, 1) = v.real();
            M.block(static_cast<Eigen::Index>(2) * j * n * n + n * n,
                    static_cast<Eigen::Index>(p), n * n, 1) = v.imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int nullity = 0;
    for (int j = 0; j < n * n; ++j) {
        double sig = j < sv.size() ? sv(j) : 0.0;
        if (sig < 1e-8 * std::max(1.0, smax)) ++nullity;
    }
    return nullity - 1;
}

}  // namespace

int stabilizer_lie_dimension(const SubalgebraSpan& s) {
    return stabilizer_dim_impl(s, true);
}

int pointwise_stabilizer_lie_dimension(const SubalgebraSpan& s) {
    return stabilizer_dim_impl(s, false);
}

bool is_left_generating(const HermitianTuple& t) {
    if (t.k() == 0) return false;
    CMat sum = CMat::Zero(t.n, t.n);
    for (const auto& e : t.entries) sum += e.adjoint() * e;
    Eigen::SelfAdjointEigenSolver<CMat> es(sum);
    double tn = tuple_norm(t);
    double tau_inv = 1e-10 * t.n * std::max(1.0, tn * tn);
    return es.eigenvalues()(0) > tau_inv;
}

BuilderResult iterate_builder(const HermitianTuple& start, const Approximator& approx,
                              const std::vector<CMat>& targets, int N, double eps) {
    if (N < 1) throw InvalidSize("iterate_builder: N must be >= 1");
    if (eps <= 0) throw InvalidSize("iterate_builder: eps must be positive");

    BuilderResult out;
    HermitianTuple y = start;
    std::vector<double> deltas = {eps};
    const std::size_t T = targets.size();
    const double root_n = std::sqrt(static_cast<double>(start.n));

    for (int m = 2; m <= N + 1; ++m) {
        double budget = deltas[0] / std::pow(2.0, m - 1);
        for (std::size_t i = 1; i < deltas.size(); ++i)
            budget = std::min(budget, deltas[i] / std::pow(2.0, m - 1 - static_cast<int>(i)));

        CMat z = T ? targets[(m - 2) % T] : CMat(CMat::Zero(start.n, start.n));
        HermitianTuple y2 = approx(y, budget, z);
        double moved = tuple_distance(y2, y);
        if (moved >= budget * (1.0 + 1e-9) + 1e-15)
            throw ApproximatorContractViolation(
                "iterate_builder: callback moved farther than its budget");

        // Membership certificate in Hilbert-Schmidt norm; sqrt(n) slack
        // covers callbacks that promise operator-norm accuracy.
        double resid = span_residual_norm(generated_algebra(y2), z);
        if (resid > budget * root_n * (1.0 + 1e-6) + 1e-12)
            throw ApproximatorContractViolation(
                "iterate_builder: callback output does not approximate its target");

        out.steps.push_back({budget, moved, resid});
        deltas.push_back(budget / 2.0);
        y = y2;
    }

    out.total_drift = tuple_distance(y, start);
    if (out.total_drift >= eps)
        throw ApproximatorContractViolation("iterate_builder: drift budget exceeded");

    SubalgebraSpan final_span = generated_algebra(y);
    for (const auto& z : targets)
        out.final_target_distances.push_back(span_residual_norm(final_span, z));
    out.result = std::move(y);
    return out;
}

}  // namespace genrank
