#pragma once

#include <cstdint>
#include <vector>

#include "genrank/generation.hpp"
#include "genrank/matrix.hpp"

namespace genrank {

// Dimension data for the set of k-tuples whose closure has type omega.
struct StratumReport {
    OrbitType omega;
    long preimage_dim_bound = 0;  // n^2 + (k-1) * sum d_i^2
    long orbit_dim_bound = 0;     // n^2 - sum d_i^2
    bool is_full = false;
};

// All orbit types realizable inside M_n: multisets of (d, m) pairs with
// sum m*d <= n, at least one summand. Sorted descending, deduplicated.
std::vector<OrbitType> enumerate_orbit_types(int n);

bool omega_valid(const OrbitType& omega, int n);

// Throws InvalidOmega when omega does not fit inside M_n or k < 2.
StratumReport stratum_dimensions(int n, int k, const OrbitType& omega);

// Dimension of the non-generating tuples: k n^2 - (k-1)(2n - 2),
// cross-checked against the maximal stratum bound over omega != (n,1).
// Throws FormulaMismatch when the scan disagrees with the formula.
long complement_dimension(int n, int k);

// Codimension of the non-generating set: (k-1)(2n-2). Positive for
// k >= 2, n >= 2, so generating tuples are dense.
long density_threshold(int n, int k);

struct McReport {
    int samples = 0;
    int generating = 0;
    int ambiguous = 0;
    double rate = 0.0;  // generating / (samples - ambiguous)
};

// Monte Carlo generation rate over seeded random Hermitian k-tuples.
// Ambiguous closures (ToleranceAmbiguity) are excluded from the rate and
// counted separately. Draw i derives its own stream from (seed, i), and
// entries are drawn sequentially, so the k-tuple of draw i is a prefix
// of the (k+1)-tuple of draw i at the same seed.
McReport mc_generation_rate(int n, int k, int samples, std::uint64_t seed);

// Block-diagonal canonical representative of omega: each d-block repeated
// m times in order, zero corner padding; k entries. The tuple generates
// a subalgebra of type omega (entries are derived from scaled canonical
// pairs with block-disjoint spectra).
HermitianTuple canonical_representative_tuple(const OrbitType& omega, int n, int k,
                                              std::uint64_t seed = 2);

}  // namespace genrank
