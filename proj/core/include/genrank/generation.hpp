#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "genrank/matrix.hpp"

namespace genrank {

// Linear span of all words in a tuple, kept as an orthonormal basis for
// the Hilbert-Schmidt inner product <a, b> = tr(a* b).
struct SubalgebraSpan {
    int n = 0;
    std::vector<CMat> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

// Isomorphism class plus embedding multiplicities of a subalgebra of M_n:
// summands (d_i, m_i) sorted descending, with sum m_i * d_i <= n.
struct OrbitType {
    std::vector<std::pair<int, int>> summands;

    bool operator==(const OrbitType&) const = default;
    bool is_full(int n) const {
        return summands.size() == 1 && summands[0].first == n && summands[0].second == 1;
    }
};

// Word closure of the span of the generators (adjoints included; no
// implicit unit). Each round multiplies the current orthonormal basis by
// every generator and keeps new directions through a rank-revealing SVD.
// The rank cut at word length L is tol_base * n * (1 + s)^L where s is
// the tuple norm after normalization; generators are scaled to unit norm
// first, which leaves the span of words unchanged. Throws
// ToleranceAmbiguity when a singular value lands in (0.1, 10) times the
// cut.
SubalgebraSpan generated_algebra(const std::vector<CMat>& generators, int n,
                                 double tol_base = 1e-7);
SubalgebraSpan generated_algebra(const HermitianTuple& t, double tol_base = 1e-7);

bool is_generating(const HermitianTuple& t, double tol_base = 1e-7);

// Identifies the isomorphism class of a product- and adjoint-closed span:
// unit, center, minimal central projections, then per-block dimensions.
// Throws NotAnAlgebra when the span fails closedness or unit checks.
OrbitType classify_subalgebra(const SubalgebraSpan& s, std::uint64_t seed = 1);

// {x in M_n : x b = b x for every basis element b}, orthonormal basis.
SubalgebraSpan commutant(const SubalgebraSpan& s);

// Dimension of the Lie algebra of the unitary group stabilizing the span
// setwise: { X : X* = -X, [X, b] in span(s) for all b }, minus one for
// the central direction i*I.
int stabilizer_lie_dimension(const SubalgebraSpan& s);

// Dimension of the Lie algebra of unitaries fixing the span pointwise:
// { X : X* = -X, [X, b] = 0 for all b }, minus one. Zero exactly when
// the span is all of M_n, so a tuple generates iff its closure has
// pointwise stabilizer dimension zero.
int pointwise_stabilizer_lie_dimension(const SubalgebraSpan& s);

// True iff sum a_i* a_i is invertible: smallest eigenvalue above
// 1e-10 * n * max(1, ||t||^2). Generating tuples are left-generating.
bool is_left_generating(const HermitianTuple& t);

// Callback contract: given (x, budget, target), return x' with
// ||x' - x|| < budget and target within budget of the word span of x'.
using Approximator =
    std::function<HermitianTuple(const HermitianTuple&, double, const CMat&)>;

struct BuilderStep {
    double budget = 0.0;
    double moved = 0.0;
    double target_residual = 0.0;
};

struct BuilderResult {
    HermitianTuple result;
    double total_drift = 0.0;
    std::vector<BuilderStep> steps;
    std::vector<double> final_target_distances;
};

// Iterative construction: starting from `start`, runs N approximation
// steps cycling through `targets` (a zero target when empty). Step m may
// move by less than min_i delta_i / 2^(m-i), which keeps the total drift
// below delta_1 = eps. Movement and per-step approximation quality are
// checked against the callback contract; violations throw
// ApproximatorContractViolation. Distances from each target to the word
// span of the final tuple are reported in the result.
BuilderResult iterate_builder(const HermitianTuple& start, const Approximator& approx,
                              const std::vector<CMat>& targets, int N, double eps);

// Hilbert-Schmidt residual of m orthogonal to the span (upper bound for
// the operator-norm distance from m to the span).
double span_residual_norm(const SubalgebraSpan& s, const CMat& m);

}  // namespace genrank
