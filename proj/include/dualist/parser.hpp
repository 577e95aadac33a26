#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "dualist/type_expr.hpp"

namespace dualist {

// Half-open byte range into the input text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : std::runtime_error(message), span_(span) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

// Concrete syntax:
//
//   S ::= "end" | "?" M "." S | "!" M "." S | Ident | "~" Ident
//       | "rec" Ident "." S | "(" S ")"
//   M ::= "int" | Ident | "~" Ident | "(" S ")"
//
// Identifiers start with an uppercase letter (letters/digits after);
// "end", "int" and "rec" are reserved; whitespace is insignificant; "rec"
// bodies and "."-continuations extend maximally to the right; compound
// message types require parentheses.
//
// The result is contractive (otherwise a ParseError points at the offending
// rec chain) and canonically renamed to Barendregt form.
TypeRef parse(const std::string& text);

// Inverse of parse up to alpha-equivalence, with minimal parenthesization.
// Deterministic; a binder is renamed only when keeping its name would
// shadow another name of the term.
std::string print(const TypeRef& t);

}  // namespace dualist
