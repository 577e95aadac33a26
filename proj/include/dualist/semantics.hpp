#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualist/report.hpp"
#include "dualist/type_expr.hpp"

namespace dualist {

// Number of pending spine dualizations mod 2.
enum class Parity { Even, Odd };

Parity flipped(Parity p);

// A state of the regular-tree semantics: a closed term (Flip markers
// allowed) plus a spine parity. The set of states reachable from any
// initial state is finite.
struct SemState {
  TypeRef term;
  Parity parity = Parity::Even;
};

// Memo identity: alpha-canonical term key plus parity.
std::string state_key(const SemState& s);

// Entry point for user terms; rejects open or non-contractive input.
SemState tree_of(const TypeRef& t);

// The state denoting the coinductive dual of s's tree.
SemState dual_tree(const SemState& s);

enum class HeadKind { End, Int, In, Out };

const char* head_name(HeadKind k);

// One-step observation of a tree. Message states always carry even parity:
// duality relabels the right spine only.
struct HeadForm {
  HeadKind kind;
  std::optional<SemState> msg;
  std::optional<SemState> cont;
};

// Rewrites the state (rec unfolding, Flip unwrapping) until a constructor is
// exposed. Terminates for contractive terms; rewrite_steps, when given,
// receives the number of rewrites performed.
HeadForm head_normal(const SemState& s, std::size_t* rewrite_steps = nullptr);

// Decides equality of the two rational trees by memoized pair exploration
// (a pair revisited counts as equal). Exploration order: message child
// before continuation child.
CheckReport tree_equal(const SemState& a, const SemState& b);

// True iff the trees are related by duality; decided as
// tree_equal(dual_tree(a), b).
CheckReport tree_dual(const SemState& a, const SemState& b);

// The finite closure of {s} under head_normal children.
std::vector<SemState> reachable_states(const SemState& s);

// Depth-bounded expansion for rendering; nodes below the budget are holes.
struct RenderNode {
  bool hole = false;
  std::string label;  // "int", "end", "!", "?"
  std::unique_ptr<RenderNode> msg;
  std::unique_ptr<RenderNode> cont;
};

RenderNode unfold_to_depth(const SemState& s, int depth);

std::string render_text(const RenderNode& n);

// {"label": "!|?|end|int", "msg": ..., "cont": ..., "hole": bool}; holes
// carry only {"hole": true}.
std::string render_json(const RenderNode& n);

}  // namespace dualist
