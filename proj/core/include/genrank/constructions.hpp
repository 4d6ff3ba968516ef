#pragma once

#include <vector>

#include "genrank/generation.hpp"
#include "genrank/matrix.hpp"

namespace genrank {

// Multi-matrix-block algebra embedded block-diagonally in M_N, N = sum d_j.
struct BlockAlgebra {
    std::vector<int> blocks;

    int ambient_dim() const;
    int algebra_dim() const;
    bool commutative() const;
    std::vector<int> offsets() const;
    bool contains(const CMat& m, double tol) const;
    CMat project(const CMat& m) const;
};

// Exact generating pair of M_n: a = diag(1/n, ..., n/n) and the 0/1
// tridiagonal b. Throws InvalidSize for n < 2.
HermitianTuple canonical_pair(int n);

// Smallest perturbation machinery: returns a tuple within eps of t that
// generates A (closure-checked). Only the first two entries change. The
// first entry ends with per-block distinct eigenvalues, spectra disjoint
// across blocks, all bounded away from zero by eps / (4 sum d_j). Inputs
// already satisfying the spectral margins and generating are returned
// unchanged. Throws NeedTwoEntries when k < 2 and A is noncommutative.
HermitianTuple perturb_to_generating_tuple(const BlockAlgebra& A, const HermitianTuple& t,
                                           double eps);

// Direct sum of generating tuples made generating: first entries are
// moved by at most eps/2 each so their spectra become disjoint and avoid
// zero, then the entrywise direct sum is formed and closure-checked.
HermitianTuple combine_direct_sum_generators(const HermitianTuple& tA,
                                             const HermitianTuple& tB, double eps);

// Floors singular values below delta/2 up to delta/2; returns the input
// unchanged (exactly) when it is already delta/2-invertible.
CMat make_invertible(const CMat& m, double delta);

// From a = diag(a_1, ..., a_n) over A with pairwise disjoint nonzero
// entry spectra and b with positive invertible (i, n) blocks, rebuilds
// the matrix units 1_A (x) e_ij via plateau bump functions on a and the
// one-sided polar elements of b. Returns n^2 units indexed i*n + j.
// Throws SpectraNotSeparated when the spectral gaps degenerate.
std::vector<CMat> recover_matrix_units(const BlockAlgebra& A, int n, const CMat& a,
                                       const CMat& b);

struct CompressResult {
    HermitianTuple output;
    double delta0 = 0.0;
    double distance = 0.0;
    int closure_dimension = 0;
};

// Compresses a Hermitian d-tuple over A (x) M_n (d >= 2) to a generating
// tuple within eps: exact blockwise diagonalization of the first entry,
// one-sided polar trick on the last column of the second, spectral
// separation of the diagonal, then a generation perturbation of two
// designated self-adjoint blocks, sized below half the bump margin.
CompressResult tensor_compress(const BlockAlgebra& A, int n, const HermitianTuple& c,
                               double eps);

// Builder callback backed by perturb_to_generating_tuple: outputs
// generate A, so any target of A sits inside the word span.
Approximator make_generating_approximator(const BlockAlgebra& A);

}  // namespace genrank
