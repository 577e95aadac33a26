#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dualist {

// Moves of a witness path: unfold one side's top rec binder, or descend into
// a child once both heads are exposed.
enum class Move { UnfoldLeft, UnfoldRight, MsgChild, ContChild };

const char* move_name(Move m);

// Verdict of an equivalence or duality check. On failure the witness is the
// path from the roots to the first disagreeing head.
struct CheckReport {
  bool ok = false;
  std::vector<Move> witness;
  std::string detail;            // what disagreed, for humans; empty when ok
  std::size_t pairs_explored = 0;

  explicit operator bool() const { return ok; }
};

}  // namespace dualist
