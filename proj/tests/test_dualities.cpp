#include "dualist/dualities.hpp"

#include "doctest.h"
#include "dualist/checkers.hpp"
#include "dualist/parser.hpp"
#include "dualist/semantics.hpp"

using namespace dualist;

TEST_CASE("naive duality") {
  CHECK(alpha_eq(naive_dual(parse("rec X.?int.X")), parse("rec X.!int.X")));
  CHECK(alpha_eq(naive_dual(parse("end")), parse("end")));
  CHECK(alpha_eq(naive_dual(parse("rec X.?X.X")), parse("rec X.!X.X")));

  CHECK_THROWS_AS(naive_dual(parse("rec X.!~X.X")), TypeError);
  CHECK_THROWS_AS(naive_dual(make_int()), TypeError);

  // The flaw: on a type with its variable in message position, the naive
  // dual is not a dual at all.
  TypeRef s = parse("rec X.?X.X");
  CHECK_FALSE(check_dual(s, naive_dual(s)).ok);
  CHECK_FALSE(tree_dual(tree_of(s), tree_of(naive_dual(s))).ok);
}

TEST_CASE("tail recursion judgement") {
  CHECK_FALSE(is_tailrec(parse("rec X.!(?int.X).end")));
  CHECK(is_tailrec(parse("end")));
  CHECK(is_tailrec(parse("rec X.?int.X")));
  CHECK(is_tailrec(parse("rec X.?(rec Y.!int.Y).X")));
  CHECK_FALSE(is_tailrec(parse("rec X.?X.X")));
  CHECK_FALSE(is_tailrec(make_neg_var("X"), {"X"}));
  CHECK(is_tailrec(make_var("X"), {"X"}));
  CHECK_FALSE(is_tailrec(make_var("X")));
}

TEST_CASE("message closure") {
  CHECK(alpha_eq(message_closure(parse("rec X.!X.X")),
                 parse("rec X.!(rec X.!X.X).X")));
  CHECK(alpha_eq(message_closure(parse("end")), parse("end")));

  TypeRef s3 = parse("rec X.?X.?X.?X.X");
  TypeRef closed = message_closure(s3);
  CHECK(alpha_eq(
      closed,
      parse("rec X.?(rec X.?X.?X.?X.X).?(rec X.?X.?X.?X.X)."
            "?(rec X.?X.?X.?X.X).X")));
  CHECK(term_size(s3) == 5);
  CHECK(term_size(closed) == 17);
  CHECK(is_tailrec(closed));

  CHECK_THROWS_AS(message_closure(parse("!X.end")), TypeError);
  CHECK_THROWS_AS(message_closure(parse("!X.end"),
                                  SubstSeq{{{"Y", Polarity::Positive},
                                            make_end()}}),
                  TypeError);
  CHECK_THROWS_AS(message_closure(parse("rec X.!~X.X")), TypeError);

  // Open type with a closing sequence.
  SubstSeq sigma{{{"X", Polarity::Positive}, parse("rec X.!X.X")}};
  CHECK(alpha_eq(message_closure(parse("!X.end"), sigma),
                 parse("!(rec X.!X.X).end")));
}

TEST_CASE("dual with on-the-fly closure") {
  TypeRef s = parse("rec X.!X.X");
  CHECK(alpha_eq(mc_dual(s), parse("rec X.?(rec X.!X.X).X")));
  CHECK(alpha_eq(mc_dual(parse("end")), parse("end")));
  CHECK(alpha_eq(mc_dual(s), naive_dual(message_closure(s))));
}

TEST_CASE("nested binders close messages through the whole sequence") {
  // S1 = rec X.rec Y.!Y.X unfolds to the all-output tree; its dual must
  // carry the closed message rec Y.!Y.S1 (an open message would denote the
  // wrong tree and break soundness).
  TypeRef s1 = parse("rec X.rec Y.!Y.X");
  TypeRef expected = parse("rec X.rec Y.?(rec Y.!Y.rec X.rec Y.!Y.X).X");
  TypeRef viaMc = mc_dual(s1);
  TypeRef viaC = closing_dual(s1);
  TypeRef viaMcl = naive_dual(message_closure(s1));

  CHECK(alpha_eq(viaMc, expected));
  CHECK(alpha_eq(viaC, expected));
  CHECK(alpha_eq(viaMcl, expected));
  CHECK(tree_dual(tree_of(viaMc), tree_of(s1)).ok);
  CHECK(check_dual(s1, viaMc).ok);
  CHECK(is_tailrec(message_closure(s1)));

  // The variant with the message left open is not a dual of S1.
  TypeRef open_message = parse("rec X.rec Y.?(rec Y.!Y.X).X");
  CHECK_FALSE(alpha_eq(viaMc, open_message));
  CHECK_FALSE(tree_dual(tree_of(open_message), tree_of(s1)).ok);
}

TEST_CASE("variable-based duals") {
  CHECK(alpha_eq(lm_dual(parse("rec X.!X.X")), parse("rec X.?~X.X")));
  CHECK(alpha_eq(lm_dual(make_neg_var("X")), make_var("X")));
  CHECK(alpha_eq(lm_dual(parse("end")), parse("end")));

  CHECK(alpha_eq(lmp_dual(parse("rec X.!X.X")), parse("rec X.?~X.X")));
  CHECK(alpha_eq(lmp_dual(make_var("X")), make_neg_var("X")));
  CHECK(alpha_eq(lmp_dual(parse("?int.end")), parse("!int.end")));

  CHECK_THROWS_AS(lm_dual(make_int()), TypeError);
  CHECK_THROWS_AS(lmp_dual(make_int()), TypeError);

  for (const char* text :
       {"rec X.!X.X", "rec X.?int.X", "rec X.?(rec Y.!Y.X).X", "end"}) {
    TypeRef t = parse(text);
    CHECK(alpha_eq(lm_dual(t), lmp_dual(t)));
    CHECK(term_size(lm_dual(t)) == term_size(t));
    CHECK(term_size(lmp_dual(t)) == term_size(t));
  }
}

TEST_CASE("closing dual") {
  TypeRef s = parse("rec X.!X.X");
  CHECK(alpha_eq(closing_dual(s), parse("rec X.?(rec X.!X.X).X")));
  CHECK(alpha_eq(closing_dual(parse("end")), parse("end")));
  CHECK(alpha_eq(closing_dual(parse("rec X.rec Y.!Y.X")),
                 mc_dual(parse("rec X.rec Y.!Y.X"))));
  CHECK_FALSE(contains_neg_var(closing_dual(s)));
}

TEST_CASE("duals on types that already have negative variables") {
  // The two formulations of the variable-based dual differ on such inputs:
  // the post-swap version exchanges a preexisting ~X in message position,
  // the pre-substitution version leaves it alone. Only the former denotes
  // the dual tree, which is why the agreement and soundness suites pin
  // negative-variable-free inputs for lmp_dual and closing_dual.
  TypeRef s = parse("rec X.!~X.X");
  TypeRef lm = lm_dual(s);
  TypeRef lmp = lmp_dual(s);
  CHECK(alpha_eq(lm, parse("rec X.?X.X")));
  CHECK(alpha_eq(lmp, parse("rec X.?~X.X")));
  CHECK_FALSE(alpha_eq(lm, lmp));
  CHECK(tree_equal(dual_tree(tree_of(s)), tree_of(lm)).ok);
  CHECK_FALSE(tree_equal(dual_tree(tree_of(s)), tree_of(lmp)).ok);

  // closing_dual follows its equations verbatim here, without a soundness
  // claim.
  CHECK(alpha_eq(closing_dual(s), parse("rec X.?(rec X.!~X.X).X")));
}
