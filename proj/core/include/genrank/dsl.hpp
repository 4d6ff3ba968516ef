#pragma once

#include <string>

#include "genrank/rank_calculus.hpp"

namespace genrank {

// Parses the algebra description language:
//
//   expr  := matrix(INT)
//          | findim(INT {, INT})
//          | commutative(dim = INT|inf [, basic|exceptional|unknown])
//          | hom(INT, dim = INT|inf)
//          | sum(expr {, expr})
//          | ext(expr, expr)              -- ideal, quotient
//          | tensor_mn(expr, INT [, rr0] [, sr1] [, unital])
//          | limit(expr {, expr} [, repeats])
//          | af
//          | uhf_rr0(expr)
//          | ah_slow
//          | ideal(expr)
//          | quotient(expr)
//
// Whitespace-insensitive. Throws MalformedDescription carrying the
// 1-based line and column of the offending token.
AlgDesc parse_algebra(const std::string& text);

// Canonical printer; parse_algebra(format_algebra(a)) reproduces a.
std::string format_algebra(const AlgDesc& a);

}  // namespace genrank
