#pragma once

#include <string>

#include "genrank/matrix.hpp"
#include "genrank/matrix_field.hpp"

namespace genrank {

// Tuple wire format:
//   {"n": 2, "k": 1, "entries": [[[ [re, im], [re, im] ],
//                                 [ [re, im], [re, im] ]]]}
// entries[j] is an n x n array of [re, im] cells, row by row. Numbers
// must be finite; entries must be Hermitian (NonHermitianInput
// otherwise). Parse and shape problems throw MalformedInput with a
// 1-based line:column position where one is available.
std::string tuple_to_json(const HermitianTuple& t, int indent = -1);
HermitianTuple tuple_from_json(const std::string& text);

// Field wire format:
//   {"points": ["x", "y"], "n": 2, "k": 2, "values": {"x": tuple, ...}}
// The points array fixes the order; values must carry exactly the same
// labels, and every tuple must match the field's n and k.
std::string field_to_json(const MatrixField& f, int indent = -1);
MatrixField field_from_json(const std::string& text);

}  // namespace genrank
