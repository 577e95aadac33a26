#include "dualist/parser.hpp"

#include <cctype>
#include <map>
#include <unordered_map>
#include <vector>

namespace dualist {

namespace {

enum class Tok { End, Int, Rec, Ident, Tilde, Bang, Query, Dot, LParen, RParen, Eof };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto push = [&](Tok kind, std::size_t len) {
      out.push_back({kind, text.substr(start, len), {start, start + len}});
      i = start + len;
    };
    switch (c) {
      case '~': push(Tok::Tilde, 1); continue;
      case '!': push(Tok::Bang, 1); continue;
      case '?': push(Tok::Query, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
      std::string word = text.substr(i, j - i);
      if (word == "end") {
        push(Tok::End, word.size());
      } else if (word == "int") {
        push(Tok::Int, word.size());
      } else if (word == "rec") {
        push(Tok::Rec, word.size());
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        push(Tok::Ident, word.size());
      } else {
        throw ParseError("unknown keyword '" + word +
                             "' (identifiers start with an uppercase letter)",
                         {i, j});
      }
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'",
                     {i, i + 1});
  }
  out.push_back({Tok::Eof, "", {n, n}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  TypeRef parse_all() {
    TypeRef t = parse_session();
    expect(Tok::Eof, "end of input");
    return t;
  }

  // Span of each rec node, for the contractivity diagnostic.
  const std::unordered_map<const TypeNode*, SourceSpan>& rec_spans() const {
    return rec_spans_;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what, const Token& at) {
    std::string got = at.kind == Tok::Eof ? "end of input" : "'" + at.text + "'";
    throw ParseError("expected " + what + ", found " + got, at.span);
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what, peek());
    return take();
  }

  TypeRef parse_session() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::End:
        take();
        return make_end();
      case Tok::Query:
      case Tok::Bang: {
        Token op = take();
        TypeRef msg = parse_message();
        expect(Tok::Dot, "'.'");
        TypeRef cont = parse_session();
        return op.kind == Tok::Query ? make_in(std::move(msg), std::move(cont))
                                     : make_out(std::move(msg), std::move(cont));
      }
      case Tok::Ident:
        return make_var(take().text);
      case Tok::Tilde: {
        take();
        Token name = expect(Tok::Ident, "identifier after '~'");
        return make_neg_var(name.text);
      }
      case Tok::Rec: {
        Token kw = take();
        Token name = expect(Tok::Ident, "identifier after 'rec'");
        expect(Tok::Dot, "'.'");
        TypeRef body = parse_session();
        TypeRef rec = make_rec(name.text, std::move(body));
        rec_spans_[rec.get()] = {kw.span.begin, previous_end()};
        return rec;
      }
      case Tok::LParen: {
        take();
        TypeRef inner = parse_session();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("a session type", t);
    }
  }

  TypeRef parse_message() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
        take();
        return make_int();
      case Tok::Ident:
        return make_var(take().text);
      case Tok::Tilde: {
        take();
        Token name = expect(Tok::Ident, "identifier after '~'");
        return make_neg_var(name.text);
      }
      case Tok::LParen: {
        take();
        TypeRef inner = parse_session();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("a message type (compound messages need parentheses)", t);
    }
  }

  std::size_t previous_end() const {
    return pos_ > 0 ? tokens_[pos_ - 1].span.end : 0;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::unordered_map<const TypeNode*, SourceSpan> rec_spans_;
};

// Finds the first rec whose binder chain ends in a variable bound by that
// chain; returns it for error reporting.
const TypeNode* find_noncontractive(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::NegVar:
      return nullptr;
    case TypeKind::In:
    case TypeKind::Out:
      if (const TypeNode* bad = find_noncontractive(t->msg)) return bad;
      return find_noncontractive(t->cont);
    case TypeKind::Flip:
      return find_noncontractive(t->cont);
    case TypeKind::Rec: {
      std::vector<std::string> chain;
      const TypeNode* cur = t.get();
      while (cur->kind == TypeKind::Rec || cur->kind == TypeKind::Flip) {
        if (cur->kind == TypeKind::Rec) chain.push_back(cur->name);
        cur = cur->cont.get();
      }
      if (cur->kind == TypeKind::Var || cur->kind == TypeKind::NegVar) {
        for (const std::string& name : chain) {
          if (name == cur->name) return t.get();
        }
      }
      return find_noncontractive(t->cont);
    }
  }
  return nullptr;
}

}  // namespace

TypeRef parse(const std::string& text) {
  Parser parser(lex(text));
  TypeRef raw = parser.parse_all();
  if (const TypeNode* bad = find_noncontractive(raw)) {
    SourceSpan span{0, text.size()};
    auto it = parser.rec_spans().find(bad);
    if (it != parser.rec_spans().end()) span = it->second;
    throw ParseError("non-contractive type", span);
  }
  return canonical_renamed(raw);
}

namespace {

void collect_names(const TypeRef& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return;
    case TypeKind::Var:
    case TypeKind::NegVar:
      out.insert(t->name);
      return;
    case TypeKind::In:
    case TypeKind::Out:
      collect_names(t->msg, out);
      collect_names(t->cont, out);
      return;
    case TypeKind::Rec:
      out.insert(t->name);
      collect_names(t->cont, out);
      return;
    case TypeKind::Flip:
      collect_names(t->cont, out);
      return;
  }
}

struct Printer {
  std::set<std::string> taken;                           // every name in the term
  std::vector<std::string> scope;                        // printed binders in scope
  std::map<std::string, std::vector<std::string>> env;   // original -> printed

  bool in_scope(const std::string& name) const {
    for (const std::string& s : scope) {
      if (s == name) return true;
    }
    return false;
  }

  std::string binder_name(const std::string& name) {
    if (!in_scope(name)) return name;
    for (int k = 1;; ++k) {
      std::string candidate = name + std::to_string(k);
      if (!taken.count(candidate) && !in_scope(candidate)) {
        taken.insert(candidate);
        return candidate;
      }
    }
  }

  std::string occurrence(const std::string& name) const {
    auto it = env.find(name);
    if (it == env.end() || it->second.empty()) return name;  // free
    return it->second.back();
  }

  void session(const TypeRef& t, std::string& out) {
    switch (t->kind) {
      case TypeKind::Int:
        out += "int";  // not grammar-reachable at this position; diagnostics only
        return;
      case TypeKind::End:
        out += "end";
        return;
      case TypeKind::Var:
        out += occurrence(t->name);
        return;
      case TypeKind::NegVar:
        out += '~';
        out += occurrence(t->name);
        return;
      case TypeKind::In:
      case TypeKind::Out:
        out += t->kind == TypeKind::In ? '?' : '!';
        message(t->msg, out);
        out += '.';
        session(t->cont, out);
        return;
      case TypeKind::Rec: {
        std::string printed = binder_name(t->name);
        out += "rec ";
        out += printed;
        out += '.';
        scope.push_back(printed);
        env[t->name].push_back(printed);
        session(t->cont, out);
        env[t->name].pop_back();
        scope.pop_back();
        return;
      }
      case TypeKind::Flip:
        // Internal marker; this form does not parse back.
        out += "~(";
        session(t->cont, out);
        out += ')';
        return;
    }
  }

  void message(const TypeRef& t, std::string& out) {
    switch (t->kind) {
      case TypeKind::Int:
        out += "int";
        return;
      case TypeKind::Var:
        out += occurrence(t->name);
        return;
      case TypeKind::NegVar:
        out += '~';
        out += occurrence(t->name);
        return;
      default:
        out += '(';
        session(t, out);
        out += ')';
        return;
    }
  }
};

}  // namespace

std::string print(const TypeRef& t) {
  Printer p;
  collect_names(t, p.taken);
  std::string out;
  out.reserve(64);
  p.session(t, out);
  return out;
}

}  // namespace dualist
