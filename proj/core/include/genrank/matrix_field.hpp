#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "genrank/matrix.hpp"

namespace genrank {

// A tuple-valued function on a finite base space: point labels in order,
// and one Hermitian k-tuple in M_n per point.
struct MatrixField {
    std::vector<std::string> points;
    int n = 0;
    int k = 0;
    std::vector<HermitianTuple> values;  // aligned with points
};

// Traces of all words in the tuple entries of length 1..max_len, words
// ordered by length then lexicographically by entry index. Size is
// k + k^2 + ... + k^max_len; meant for short lengths.
std::vector<std::complex<double>> word_trace_invariant(const HermitianTuple& t,
                                                       int max_len);

// Searches the joint intertwiner space of the two tuples for a unitary u
// with u t1 u* = t2; returns it when one is found and certified to
// 1e-8 * scale. Tuples must share n and k.
std::optional<CMat> find_conjugating_unitary(const HermitianTuple& t1,
                                             const HermitianTuple& t2);

// Whether some unitary conjugates t1 entrywise onto t2. Decided by word
// traces: after scaling both tuples by a common factor to unit norm, the
// tuples are equivalent exactly when all word traces up to length max_len
// agree; length 2n^2 is past the classical sufficiency bound. Compared
// per cyclic class with tolerance 1e-6 * 2^len; an explicit conjugating
// unitary serves as a fast positive certificate. max_len = 0 means 2n^2.
bool same_unitary_orbit(const HermitianTuple& t1, const HermitianTuple& t2,
                        int max_len = 0);

struct FieldCheck {
    bool generating = false;
    // First point whose fiber tuple fails to generate, else -1.
    int first_non_generating_point = -1;
    // First pair of points the field cannot tell apart, else -1/-1.
    int first_merged_pair_a = -1;
    int first_merged_pair_b = -1;
    // True when some pair comparison needed the full trace scan rather
    // than an intertwiner certificate.
    bool used_trace_criterion = false;
};

// Whether the field generates all M_n-valued functions on its base:
// every fiber must generate M_n and no two fibers may lie on the same
// unitary orbit. For n = 1 this degenerates to: every fiber vector is
// nonzero and fiber vectors are pairwise distinct. Propagates
// ToleranceAmbiguity from fiber closures.
FieldCheck is_generating_field(const MatrixField& f);

}  // namespace genrank
