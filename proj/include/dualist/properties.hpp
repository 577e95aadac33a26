#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualist/type_expr.hpp"

namespace dualist {

struct SuiteOptions {
  std::uint64_t seed = 20260801;
  int count = 200;    // generated types per configuration
  int max_depth = 5;
};

struct PropertyResult {
  std::string name;
  int runs = 0;
  int failures = 0;
  bool pass = false;
  std::string note;  // first (shrunk) counterexample, or explanation
};

// Runs the full differential suite over three corpora generated from
// opts.seed: plain session types (messages may mention binders), types with
// negative variables, and tail-recursive types. Every property must pass
// except naive-dual-flaw-found, which passes exactly when a counterexample
// to "check_dual(S, naive_dual(S))" is found and its shrunk form still has
// a recursion variable free in some message.
std::vector<PropertyResult> run_property_suite(const SuiteOptions& opts);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace dualist
