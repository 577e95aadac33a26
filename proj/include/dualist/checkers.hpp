#pragma once

#include "dualist/report.hpp"
#include "dualist/type_expr.hpp"

namespace dualist {

// Decides type equivalence on mu-terms directly, by the coinductive rules:
// when the right side is a rec it is unfolded first; the left side unfolds
// only when the right is not a rec; otherwise heads must match and both
// children stay related. Pairs revisited (up to alpha) succeed. Requires
// closed contractive inputs.
CheckReport check_equiv(const TypeRef& a, const TypeRef& b);

// Decides the duality relation on mu-terms: the same unfolding discipline,
// heads must be opposite, message types are compared with check_equiv and
// continuations coinductively. Rejects int arguments (duality is defined on
// session types only).
CheckReport check_dual(const TypeRef& a, const TypeRef& b);

}  // namespace dualist
