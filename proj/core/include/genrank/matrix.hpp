#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "genrank/errors.hpp"

namespace genrank {

using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Tuple of n x n Hermitian matrices. Entries are stored as given; every
// operation that relies on Hermiticity checks it against tau_herm.
struct HermitianTuple {
    int n = 0;
    std::vector<CMat> entries;

    int k() const { return static_cast<int>(entries.size()); }
};

// Eigendecomposition with eigenvalues ascending and a deterministic
// phase convention on eigenvector columns.
struct SpectralData {
    RVec eigenvalues;
    CMat unitary;
};

// Piecewise linear function on the reals: linear between consecutive
// breakpoints, constant beyond the first/last one.
struct PiecewiseLinearFn {
    std::vector<double> breakpoints;  // strictly increasing
    std::vector<double> values;

    double operator()(double x) const;
};

double operator_norm(const CMat& m);
double tuple_norm(const HermitianTuple& t);
double tuple_distance(const HermitianTuple& a, const HermitianTuple& b);

// Hermiticity tolerance: ||h - h*|| <= 1e-10 * max(1, ||h||).
double hermitian_tolerance(const CMat& h);
bool is_hermitian(const CMat& h);

// Throws NonHermitianInput if h fails the tau_herm check.
SpectralData spectral_decomposition(const CMat& h);

// Functional calculus: U diag(f(lambda)) U*.
CMat apply_function(const CMat& h, const PiecewiseLinearFn& f);

// Entrywise block-diagonal sum; throws LengthMismatch on unequal k.
HermitianTuple direct_sum_tuples(const HermitianTuple& a, const HermitianTuple& b);

// Halves the length: entry j of the output is a_j + i*a_{m+j} where
// k = 2m. The output entries are general (non-Hermitian) matrices that
// generate the same algebra as the input. Throws OddLength.
std::vector<CMat> complexify_tuple(const HermitianTuple& t);

// k independent draws of (G + G*)/2 where G has iid standard complex
// Gaussian entries. Deterministic for a fixed seed, and the first k
// entries of a (n, k+1, seed) draw equal the (n, k, seed) draw.
HermitianTuple random_hermitian_tuple(int n, int k, std::uint64_t seed);

}  // namespace genrank
