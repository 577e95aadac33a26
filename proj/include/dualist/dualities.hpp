#pragma once

#include <set>
#include <string>

#include "dualist/type_expr.hpp"

namespace dualist {

// Names of positive variables permitted in tail position.
using TailRecContext = std::set<std::string>;

// The structural dual: flips ?/!, leaves messages and variables unchanged,
// maps rec X.S to rec X.dual(S). Predates negative variables, which are
// therefore rejected, as is a top-level int. Unsound when a rec-bound
// variable occurs in message position; see is_tailrec.
TypeRef naive_dual(const TypeRef& s);

// Tail recursive over ctx: every message type is tail recursive over the
// empty context (in particular closed, once the whole type is closed),
// variables must come from ctx, a rec binder extends ctx. Negative
// variables are never tail recursive.
bool is_tailrec(const TypeRef& t, const TailRecContext& ctx);
bool is_tailrec(const TypeRef& t);

// Rewrites the type so every message is closed, by applying the accumulated
// binder substitutions to messages: entering rec X.S prepends [rec X.S/X]
// to sigma, and a message T becomes T sigma. Every produced message is
// checked closed; a sequence that fails to close one is rejected, as are
// negative variables (which no substitution can close).
TypeRef message_closure(const TypeRef& t, const SubstSeq& sigma);
TypeRef message_closure(const TypeRef& t);  // sigma empty; requires closed t

// Message closure fused with the dual in one pass: ?/! flip, messages
// become T sigma, rec prepends its substitution, variables stay.
TypeRef mc_dual(const TypeRef& s, const SubstSeq& sigma);
TypeRef mc_dual(const TypeRef& s);  // sigma empty; requires closed s

// The variable-based dual: a tail variable X becomes ~X and vice versa,
// messages are untouched, and rec X.S dualizes the body and then exchanges
// the two polarities of X in it. Preserves the size of the type.
TypeRef lm_dual(const TypeRef& s);

// Same function, computed by first substituting ~X for X in the body and
// then dualizing.
TypeRef lmp_dual(const TypeRef& s);

// The variable-based dual made to yield no new negative variables: after
// dualizing the ~X-substituted body, free ~X is replaced by the original
// rec X.S. Coincides with mc_dual on types without negative variables.
TypeRef closing_dual(const TypeRef& s);

}  // namespace dualist
