#pragma once

#include <cstdint>
#include <vector>

#include "dualist/type_expr.hpp"

namespace dualist {

// Seeded random generation of closed contractive session types.
//
// Default weights favor ?/! over rec 3:1 and int over session messages 2:1.
// Generation is contractive by construction: a rec body chain never ends in
// a bare variable, so no candidate is ever rejected.
struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 4;         // at max_depth only leaves are generated
  bool allow_neg_vars = false;
  bool tailrec_only = false; // messages are generated closed and tail recursive

  struct Weights {
    int leaf_end = 2;
    int leaf_var = 2;
    int in_out = 6;
    int rec = 2;
    int msg_int = 2;
    int msg_session = 1;
  };
  Weights weights;
};

// Deterministic in cfg; the result is closed, contractive, tail recursive
// when tailrec_only, and free of negative variables unless allow_neg_vars.
TypeRef gen_type(const GenConfig& cfg);

// Smaller candidate counterexamples: a subterm replaced by end, a message
// replaced by int, or a rec dropped by unfolding its variables to end. Every
// candidate is closed, contractive and strictly smaller; sorted by size.
std::vector<TypeRef> shrink(const TypeRef& t);

}  // namespace dualist
