#pragma once

#include <compare>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualist {

// Raised when an operation's input violates a documented domain restriction
// (open type where a closed one is required, negative variables where none
// are allowed, non-contractive recursion, ...).
class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TypeKind {
  Int,     // payload base type; message position only
  End,     // finished protocol
  In,      // ?msg.cont
  Out,     // !msg.cont
  Var,     // positive recursion variable
  NegVar,  // negative recursion variable: stands for the dual of its binder
  Rec,     // rec X.body; binds both X and ~X
  Flip,    // internal marker: the dual of the body's tree. Produced when a
           // binder is unfolded over negative occurrences; never parsed.
};

struct TypeNode;
using TypeRef = std::shared_ptr<const TypeNode>;

// Immutable. Rec and Flip keep their body in `cont`.
struct TypeNode {
  TypeKind kind;
  std::string name;  // Var, NegVar, Rec
  TypeRef msg;       // In, Out
  TypeRef cont;      // In, Out, Rec, Flip
};

TypeRef make_int();
TypeRef make_end();
TypeRef make_in(TypeRef msg, TypeRef cont);
TypeRef make_out(TypeRef msg, TypeRef cont);
TypeRef make_var(std::string name);
TypeRef make_neg_var(std::string name);
TypeRef make_rec(std::string name, TypeRef body);
TypeRef make_flip(TypeRef body);

enum class Polarity { Positive, Negative };

// A variable occurrence shape: name plus polarity.
struct VarOcc {
  std::string name;
  Polarity polarity = Polarity::Positive;
  auto operator<=>(const VarOcc&) const = default;
};

struct Binding {
  VarOcc target;
  TypeRef replacement;
};

// Applied left to right: t applied to (b; rest) is (t[b]) applied to rest.
using SubstSeq = std::vector<Binding>;

std::set<VarOcc> free_vars(const TypeRef& t);
bool is_closed(const TypeRef& t);
bool contains_neg_var(const TypeRef& t);

// Replaces the free occurrences matching target (name and polarity). A
// binder blocks both polarities of its own name. Capture freedom relies on
// the Barendregt convention; see canonical_renamed.
TypeRef substitute(const TypeRef& t, const VarOcc& target,
                   const TypeRef& replacement);

// Exchanges free occurrences of Var name and NegVar name.
TypeRef swap_polarity(const TypeRef& t, const std::string& name);

TypeRef apply_subst_seq(TypeRef t, const SubstSeq& seq);

// True iff no chain rec X.rec X1...rec Xn reaches a variable (of either
// polarity) bound by a binder of that chain.
bool is_contractive(const TypeRef& t);

// Removes rec-directly-under-rec (renaming both polarities of the inner
// binder to the outer one) and rec-over-variable. Throws on non-contractive
// input. The result is tree-equal to the input.
TypeRef normalize(const TypeRef& t);

bool alpha_eq(const TypeRef& a, const TypeRef& b);

// Serialization using de Bruijn indices for bound occurrences; two terms get
// the same key iff they are alpha-equivalent. Used as memo identity by the
// coinductive checks.
std::string canon_key(const TypeRef& t);

// Leaves count 1, rec counts 1 plus its body, ?/! count message plus
// continuation (the node itself contributes 0). Flip is transparent.
std::size_t term_size(const TypeRef& t);

// Barendregt form: binder names pairwise distinct and distinct from all free
// names. Deterministic: a binder keeps its name unless taken, otherwise the
// smallest numeric suffix is appended.
TypeRef canonical_renamed(const TypeRef& t);

// One unfolding step of a rec binder: body with X replaced by the whole
// binder and ~X replaced by Flip(binder), in a single pass.
TypeRef unfold_rec(const TypeRef& rec);

}  // namespace dualist
