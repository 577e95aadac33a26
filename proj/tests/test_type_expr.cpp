#include "dualist/type_expr.hpp"

#include <set>
#include <vector>

#include "doctest.h"
#include "dualist/parser.hpp"
#include "dualist/semantics.hpp"

using namespace dualist;

namespace {

// Test-side oracle: enumerate every variable occurrence with its
// binder-resolution, independently of free_vars.
void occurrences(const TypeRef& t, std::vector<std::string>& binders,
                 std::vector<std::pair<VarOcc, bool>>& out) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return;
    case TypeKind::Var:
    case TypeKind::NegVar: {
      bool bound = false;
      for (const std::string& b : binders) {
        if (b == t->name) bound = true;
      }
      out.push_back({{t->name, t->kind == TypeKind::Var ? Polarity::Positive
                                                        : Polarity::Negative},
                     bound});
      return;
    }
    case TypeKind::In:
    case TypeKind::Out:
      occurrences(t->msg, binders, out);
      occurrences(t->cont, binders, out);
      return;
    case TypeKind::Rec:
      binders.push_back(t->name);
      occurrences(t->cont, binders, out);
      binders.pop_back();
      return;
    case TypeKind::Flip:
      occurrences(t->cont, binders, out);
      return;
  }
}

std::set<VarOcc> free_vars_oracle(const TypeRef& t) {
  std::vector<std::string> binders;
  std::vector<std::pair<VarOcc, bool>> occ;
  occurrences(t, binders, occ);
  std::set<VarOcc> out;
  for (const auto& [v, bound] : occ) {
    if (!bound) out.insert(v);
  }
  return out;
}

// Test-side oracle: alpha-equivalence by parallel traversal with binder
// environments (independent of the de Bruijn serialization the library uses).
bool alpha_oracle(const TypeRef& a, const TypeRef& b,
                  std::vector<std::string>& ea, std::vector<std::string>& eb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return true;
    case TypeKind::Var:
    case TypeKind::NegVar: {
      int ia = -1, ib = -1;
      for (int i = static_cast<int>(ea.size()) - 1; i >= 0; --i) {
        if (ea[static_cast<std::size_t>(i)] == a->name) { ia = i; break; }
      }
      for (int i = static_cast<int>(eb.size()) - 1; i >= 0; --i) {
        if (eb[static_cast<std::size_t>(i)] == b->name) { ib = i; break; }
      }
      if (ia < 0 && ib < 0) return a->name == b->name;  // both free
      return ia == ib;
    }
    case TypeKind::In:
    case TypeKind::Out:
      return alpha_oracle(a->msg, b->msg, ea, eb) &&
             alpha_oracle(a->cont, b->cont, ea, eb);
    case TypeKind::Rec: {
      ea.push_back(a->name);
      eb.push_back(b->name);
      bool ok = alpha_oracle(a->cont, b->cont, ea, eb);
      ea.pop_back();
      eb.pop_back();
      return ok;
    }
    case TypeKind::Flip:
      return alpha_oracle(a->cont, b->cont, ea, eb);
  }
  return false;
}

bool alpha_oracle(const TypeRef& a, const TypeRef& b) {
  std::vector<std::string> ea, eb;
  return alpha_oracle(a, b, ea, eb);
}

void binder_names(const TypeRef& t, std::vector<std::string>& out) {
  switch (t->kind) {
    case TypeKind::In:
    case TypeKind::Out:
      binder_names(t->msg, out);
      binder_names(t->cont, out);
      return;
    case TypeKind::Rec:
      out.push_back(t->name);
      binder_names(t->cont, out);
      return;
    case TypeKind::Flip:
      binder_names(t->cont, out);
      return;
    default:
      return;
  }
}

}  // namespace

TEST_CASE("free variables") {
  CHECK(free_vars(parse("end")).empty());

  auto fv = free_vars(parse("!X.~Y"));
  CHECK(fv == std::set<VarOcc>{{"X", Polarity::Positive},
                               {"Y", Polarity::Negative}});
  CHECK(fv == free_vars_oracle(parse("!X.~Y")));

  TypeRef both = parse("rec X.!X.~X");
  CHECK(free_vars(both).empty());
  CHECK(free_vars_oracle(both).empty());

  TypeRef mixed = parse("rec X.!(?Y.X).~Z");
  CHECK(free_vars(mixed) == free_vars_oracle(mixed));
  CHECK(free_vars(mixed) == std::set<VarOcc>{{"Y", Polarity::Positive},
                                             {"Z", Polarity::Negative}});
}

TEST_CASE("substitution") {
  CHECK(alpha_eq(substitute(make_var("X"), {"X", Polarity::Positive},
                            make_end()),
                 make_end()));
  // No substitution for the other polarity.
  CHECK(alpha_eq(substitute(make_neg_var("X"), {"X", Polarity::Positive},
                            make_end()),
                 make_neg_var("X")));
  CHECK(alpha_eq(substitute(parse("?~X.X"), {"X", Polarity::Negative},
                            parse("rec X.!X.X")),
                 parse("?(rec X.!X.X).X")));
  // A binder blocks both polarities of its own name.
  TypeRef blocked = parse("rec X.!X.~X");
  CHECK(substitute(blocked, {"X", Polarity::Positive}, make_end()) == blocked);
  CHECK(substitute(blocked, {"X", Polarity::Negative}, make_end()) == blocked);
}

TEST_CASE("polarity swap") {
  CHECK(alpha_eq(swap_polarity(parse("?X.~X"), "X"), parse("?~X.X")));
  CHECK(alpha_eq(swap_polarity(make_var("Y"), "X"), make_var("Y")));

  for (const char* text : {"?X.~X", "rec Y.!X.~Y", "end", "!int.~X"}) {
    TypeRef t = parse(text);
    TypeRef twice = swap_polarity(swap_polarity(t, "X"), "X");
    CHECK(alpha_eq(twice, t));
  }
}

TEST_CASE("substitution sequences fold left to right") {
  TypeRef t = parse("rec Z.?int.Z");
  CHECK(apply_subst_seq(t, {}) == t);

  // Y under [S1/X]; [S2/Y] picks up S2 with its free X intact.
  SubstSeq seq{{{"X", Polarity::Positive}, parse("rec X.!X.X")},
               {{"Y", Polarity::Positive}, parse("rec Y.!Y.X")}};
  CHECK(alpha_eq(apply_subst_seq(make_var("Y"), seq), parse("rec Y.!Y.X")));

  // Hand-folded: X[end/X] = end, end[!int.end/X] = end.
  SubstSeq wipe{{{"X", Polarity::Positive}, make_end()},
                {{"X", Polarity::Positive}, parse("!int.end")}};
  CHECK(alpha_eq(apply_subst_seq(make_var("X"), wipe), make_end()));
}

TEST_CASE("contractivity") {
  CHECK_FALSE(is_contractive(make_rec("X", make_var("X"))));
  CHECK(is_contractive(make_end()));
  CHECK_FALSE(is_contractive(make_rec("X", make_rec("Y", make_var("X")))));
  CHECK_FALSE(is_contractive(make_rec("X", make_neg_var("X"))));
  CHECK(is_contractive(parse("rec X.!X.X")));
  CHECK(is_contractive(parse("rec X.rec Y.!Y.X")));
  // A variable bound outside the chain does not break contractivity.
  CHECK(is_contractive(make_rec(
      "X", make_out(make_int(), make_rec("Y", make_var("X"))))));
}

TEST_CASE("normalization") {
  TypeRef coalesced = normalize(parse("rec X.rec Y.!Y.X"));
  CHECK(alpha_eq(coalesced, parse("rec X.!X.X")));
  CHECK(tree_equal(tree_of(coalesced), tree_of(parse("rec X.rec Y.!Y.X"))).ok);

  CHECK(alpha_eq(normalize(parse("?int.end")), parse("?int.end")));

  // rec over a foreign variable disappears.
  TypeRef open = make_rec("X", make_var("Y"));
  CHECK(alpha_eq(normalize(open), make_var("Y")));

  // Both polarities of the inner binder collapse into the outer one.
  TypeRef neg = normalize(parse("rec X.rec Y.!~Y.Y"));
  CHECK(alpha_eq(neg, parse("rec X.!~X.X")));

  CHECK_THROWS_AS(normalize(make_rec("X", make_var("X"))), TypeError);
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse("rec X.!int.X"), parse("rec Y.!int.Y")));
  CHECK(alpha_oracle(parse("rec X.!int.X"), parse("rec Y.!int.Y")));

  CHECK(alpha_eq(parse("rec X.!X.~X"), parse("rec Y.!Y.~Y")));
  CHECK(alpha_oracle(parse("rec X.!X.~X"), parse("rec Y.!Y.~Y")));

  CHECK_FALSE(alpha_eq(parse("rec X.!int.X"), parse("rec X.?int.X")));
  CHECK_FALSE(alpha_oracle(parse("rec X.!int.X"), parse("rec X.?int.X")));

  // Free variables must match by name; polarity matters.
  CHECK_FALSE(alpha_eq(make_var("X"), make_var("Y")));
  CHECK_FALSE(alpha_eq(make_var("X"), make_neg_var("X")));
  CHECK(alpha_eq(make_var("X"), make_var("X")));

  // Bound against free of the same name.
  CHECK_FALSE(alpha_eq(parse("rec X.!int.X"), parse("!int.X")));

  for (const char* left : {"rec X.!X.X", "rec A.?(rec B.!B.A).A", "?int.end"}) {
    for (const char* right :
         {"rec X.!X.X", "rec A.?(rec B.!B.A).A", "?int.end"}) {
      CHECK(alpha_eq(parse(left), parse(right)) ==
            alpha_oracle(parse(left), parse(right)));
    }
  }
}

TEST_CASE("size metric") {
  CHECK(term_size(parse("rec X.?X.?X.?X.X")) == 5);
  CHECK(term_size(make_end()) == 1);
  CHECK(term_size(parse("?int.end")) == 2);
  CHECK(term_size(parse("rec X.!(?int.X).end")) == 4);
  // Alpha-invariant.
  CHECK(term_size(parse("rec X.?X.?X.?X.X")) ==
        term_size(parse("rec W.?W.?W.?W.W")));
}

TEST_CASE("canonical renaming") {
  TypeRef shadowed = parse("rec X.!(rec X.!X.X).X");
  std::vector<std::string> names;
  binder_names(shadowed, names);
  REQUIRE(names.size() == 2);
  CHECK(names[0] != names[1]);
  CHECK(free_vars(shadowed).empty());

  // Binder names also avoid free names.
  TypeRef with_free = canonical_renamed(make_rec("X", make_out(make_var("Y"), make_var("X"))));
  names.clear();
  binder_names(with_free, names);
  REQUIRE(names.size() == 1);
  CHECK(names[0] != "Y");
  CHECK(alpha_oracle(with_free, make_rec("X", make_out(make_var("Y"), make_var("X")))));
}

TEST_CASE("unfolding substitutes both polarities") {
  TypeRef rec = parse("rec X.!X.~X");
  TypeRef unfolded = unfold_rec(rec);
  REQUIRE(unfolded->kind == TypeKind::Out);
  CHECK(unfolded->msg == rec);
  REQUIRE(unfolded->cont->kind == TypeKind::Flip);
  CHECK(unfolded->cont->cont == rec);

  // A nested binder of the same name blocks the unfolding.
  TypeRef shadow = make_rec(
      "X", make_out(make_rec("X", make_var("X")), make_var("X")));
  TypeRef u = unfold_rec(shadow);
  REQUIRE(u->kind == TypeKind::Out);
  CHECK(u->msg == shadow->cont->msg);
  CHECK(u->cont == shadow);
}
