#pragma once

#include <string>
#include <string_view>

#include "weil/cograph.hpp"
#include "weil/genexpr.hpp"
#include "weil/morphism.hpp"

namespace weil {

// Object grammar, `*` binding tighter than `@`, both right-associative:
//   obj  := term (('@' | '(x)') obj)?
//   term := atom ('*' term)?
//   atom := 'k' | 'W' ('^' N)? | N 'W' | '(' obj ')'
// `(x)` is accepted as a spelling of `@`.  Counts are positive.
Cotree parse_object(std::string_view text);

// `f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3`
// Newlines count as whitespace and `#` starts a comment.  A generator
// without a clause maps to 0.  With one generator the bare names x and y
// are used; x1 and y1 are accepted too, and image terms may name the
// target generators with x instead of y.  Terms may carry a leading
// coefficient (`2 y1`); coefficients must be valid for the rig.  A repeated
// generator or an edge inside a term makes the term vanish.
// Errors: SyntaxError, RelationViolation, ValidationError (bad coefficient).
Morphism parse_morphism(std::string_view text, Rig rig);

// Name given in the header of a morphism text (`f` above).
std::string morphism_name(std::string_view text);

// Prefix form written by to_string(GenExpr).
GenExpr parse_genexpr(std::string_view text);

// A plain graph: `n` or `n : u-v u-v ...`, vertices 1..n.  Commas between
// edges are optional.
Graph parse_graph(std::string_view text);

std::string graph_to_string(const Graph& g);

}  // namespace weil
