#include "dualist/parser.hpp"

#include <string>

#include "doctest.h"
#include "dualist/type_expr.hpp"

using namespace dualist;

namespace {

SourceSpan span_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.span();
  }
  FAIL("expected a parse error for: " << text);
  return {};
}

}  // namespace

TEST_CASE("parsing the grammar") {
  TypeRef t = parse("rec X.!X.X");
  REQUIRE(t->kind == TypeKind::Rec);
  REQUIRE(t->cont->kind == TypeKind::Out);
  CHECK(t->cont->msg->kind == TypeKind::Var);
  CHECK(t->cont->cont->kind == TypeKind::Var);

  TypeRef counter = parse("rec X.!(?int.X).end");
  REQUIRE(counter->kind == TypeKind::Rec);
  REQUIRE(counter->cont->kind == TypeKind::Out);
  REQUIRE(counter->cont->msg->kind == TypeKind::In);
  CHECK(counter->cont->msg->msg->kind == TypeKind::Int);
  CHECK(counter->cont->cont->kind == TypeKind::End);

  CHECK(parse("~X")->kind == TypeKind::NegVar);
  CHECK(parse("((end))")->kind == TypeKind::End);
  CHECK(parse("  rec X . ! int .\nX ")->kind == TypeKind::Rec);

  // Continuations extend maximally to the right.
  TypeRef chain = parse("?int.!int.end");
  REQUIRE(chain->kind == TypeKind::In);
  CHECK(chain->cont->kind == TypeKind::Out);
}

TEST_CASE("parse errors carry spans") {
  const std::string missing = "?int";
  SourceSpan s = span_of(missing);
  CHECK(s.begin <= s.end);
  CHECK(s.end <= missing.size());

  for (const std::string text :
       {"?int", "rec X", "!.end", "?rec X.end.end", "rec end.X", "foo",
        "?int.end)", "~int", "(end", "?int.3"}) {
    SourceSpan sp = span_of(text);
    CHECK(sp.begin <= sp.end);
    CHECK(sp.end <= text.size());
  }
}

TEST_CASE("non-contractive inputs are rejected with the chain's span") {
  const std::string text = "!int.rec X.rec Y.X";
  try {
    parse(text);
    FAIL("expected a contractivity error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()) == "non-contractive type");
    CHECK(e.span().begin == 5);
    CHECK(e.span().end == text.size());
  }
  CHECK_THROWS_AS(parse("rec X.X"), ParseError);
  CHECK_THROWS_AS(parse("rec X.~X"), ParseError);
  CHECK_THROWS_AS(parse("rec X.rec Y.X"), ParseError);
}

TEST_CASE("printing") {
  CHECK(print(make_end()) == "end");
  CHECK(print(parse("((end))")) == "end");
  CHECK(print(parse("rec X.?(rec Y.!Y.X).X")) == "rec X.?(rec Y.!Y.X).X");
  CHECK(print(parse("?int.!int.end")) == "?int.!int.end");
  CHECK(print(parse("rec X.!~X.X")) == "rec X.!~X.X");
}

TEST_CASE("round trips") {
  for (const char* text :
       {"end", "rec X.!X.X", "rec X.?(rec Y.!Y.X).X", "?int.end",
        "rec X.!(?int.X).end", "rec X.!~X.X", "!(rec X.?X.X).end"}) {
    TypeRef t = parse(text);
    CHECK(alpha_eq(parse(print(t)), t));
    CHECK(print(parse(print(t))) == print(t));
  }
}

TEST_CASE("printing renames shadowed binders") {
  // Built programmatically: an inner binder reuses the outer name.
  TypeRef inner = make_rec("X", make_out(make_var("X"), make_var("X")));
  TypeRef outer = make_rec("X", make_out(make_var("X"), inner));
  std::string text = print(outer);
  TypeRef reparsed = parse(text);
  CHECK(alpha_eq(reparsed, outer));

  // A binder must not capture a free variable of the same name.
  TypeRef capture = make_rec("X", make_out(make_var("Y"), make_var("X")));
  TypeRef hostile = make_rec("Y", make_out(make_var("Y"), capture));
  CHECK(alpha_eq(parse(print(hostile)), hostile));
}

TEST_CASE("reserved words are not identifiers") {
  CHECK_THROWS_AS(parse("rec end.end"), ParseError);
  CHECK_THROWS_AS(parse("rec int.int"), ParseError);
  CHECK_THROWS_AS(parse("!end"), ParseError);
}
