#include "dualist/type_expr.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace dualist {

namespace {

const TypeRef kInt = std::make_shared<const TypeNode>(
    TypeNode{TypeKind::Int, "", nullptr, nullptr});
const TypeRef kEnd = std::make_shared<const TypeNode>(
    TypeNode{TypeKind::End, "", nullptr, nullptr});

TypeRef node(TypeKind kind, std::string name, TypeRef msg, TypeRef cont) {
  return std::make_shared<const TypeNode>(
      TypeNode{kind, std::move(name), std::move(msg), std::move(cont)});
}

}  // namespace

TypeRef make_int() { return kInt; }
TypeRef make_end() { return kEnd; }

TypeRef make_in(TypeRef msg, TypeRef cont) {
  assert(msg && cont);
  return node(TypeKind::In, "", std::move(msg), std::move(cont));
}

TypeRef make_out(TypeRef msg, TypeRef cont) {
  assert(msg && cont);
  return node(TypeKind::Out, "", std::move(msg), std::move(cont));
}

TypeRef make_var(std::string name) {
  return node(TypeKind::Var, std::move(name), nullptr, nullptr);
}

TypeRef make_neg_var(std::string name) {
  return node(TypeKind::NegVar, std::move(name), nullptr, nullptr);
}

TypeRef make_rec(std::string name, TypeRef body) {
  assert(body);
  return node(TypeKind::Rec, std::move(name), nullptr, std::move(body));
}

TypeRef make_flip(TypeRef body) {
  assert(body);
  return node(TypeKind::Flip, "", nullptr, std::move(body));
}

namespace {

void free_vars_into(const TypeRef& t, std::vector<std::string>& bound,
                    std::set<VarOcc>& out) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return;
    case TypeKind::Var:
    case TypeKind::NegVar: {
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) {
        out.insert({t->name, t->kind == TypeKind::Var ? Polarity::Positive
                                                      : Polarity::Negative});
      }
      return;
    }
    case TypeKind::In:
    case TypeKind::Out:
      free_vars_into(t->msg, bound, out);
      free_vars_into(t->cont, bound, out);
      return;
    case TypeKind::Rec:
      bound.push_back(t->name);
      free_vars_into(t->cont, bound, out);
      bound.pop_back();
      return;
    case TypeKind::Flip:
      free_vars_into(t->cont, bound, out);
      return;
  }
}

}  // namespace

std::set<VarOcc> free_vars(const TypeRef& t) {
  std::set<VarOcc> out;
  std::vector<std::string> bound;
  free_vars_into(t, bound, out);
  return out;
}

bool is_closed(const TypeRef& t) { return free_vars(t).empty(); }

bool contains_neg_var(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
      return false;
    case TypeKind::NegVar:
      return true;
    case TypeKind::In:
    case TypeKind::Out:
      return contains_neg_var(t->msg) || contains_neg_var(t->cont);
    case TypeKind::Rec:
    case TypeKind::Flip:
      return contains_neg_var(t->cont);
  }
  return false;
}

TypeRef substitute(const TypeRef& t, const VarOcc& target,
                   const TypeRef& replacement) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return t;
    case TypeKind::Var:
      return (target.polarity == Polarity::Positive && t->name == target.name)
                 ? replacement
                 : t;
    case TypeKind::NegVar:
      return (target.polarity == Polarity::Negative && t->name == target.name)
                 ? replacement
                 : t;
    case TypeKind::In:
    case TypeKind::Out: {
      TypeRef m = substitute(t->msg, target, replacement);
      TypeRef c = substitute(t->cont, target, replacement);
      if (m == t->msg && c == t->cont) return t;
      return node(t->kind, "", std::move(m), std::move(c));
    }
    case TypeKind::Rec: {
      if (t->name == target.name) return t;  // binds both polarities
      TypeRef b = substitute(t->cont, target, replacement);
      if (b == t->cont) return t;
      return make_rec(t->name, std::move(b));
    }
    case TypeKind::Flip: {
      TypeRef b = substitute(t->cont, target, replacement);
      if (b == t->cont) return t;
      return make_flip(std::move(b));
    }
  }
  return t;
}

TypeRef swap_polarity(const TypeRef& t, const std::string& name) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return t;
    case TypeKind::Var:
      return t->name == name ? make_neg_var(name) : t;
    case TypeKind::NegVar:
      return t->name == name ? make_var(name) : t;
    case TypeKind::In:
    case TypeKind::Out: {
      TypeRef m = swap_polarity(t->msg, name);
      TypeRef c = swap_polarity(t->cont, name);
      if (m == t->msg && c == t->cont) return t;
      return node(t->kind, "", std::move(m), std::move(c));
    }
    case TypeKind::Rec: {
      if (t->name == name) return t;
      TypeRef b = swap_polarity(t->cont, name);
      if (b == t->cont) return t;
      return make_rec(t->name, std::move(b));
    }
    case TypeKind::Flip: {
      TypeRef b = swap_polarity(t->cont, name);
      if (b == t->cont) return t;
      return make_flip(std::move(b));
    }
  }
  return t;
}

TypeRef apply_subst_seq(TypeRef t, const SubstSeq& seq) {
  for (const Binding& b : seq) t = substitute(t, b.target, b.replacement);
  return t;
}

bool is_contractive(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::NegVar:
      return true;
    case TypeKind::In:
    case TypeKind::Out:
      return is_contractive(t->msg) && is_contractive(t->cont);
    case TypeKind::Flip:
      return is_contractive(t->cont);
    case TypeKind::Rec: {
      // Walk the chain of binders (Flip never exposes a constructor, so it
      // does not break the chain).
      std::vector<std::string> chain;
      const TypeNode* cur = t.get();
      while (cur->kind == TypeKind::Rec || cur->kind == TypeKind::Flip) {
        if (cur->kind == TypeKind::Rec) chain.push_back(cur->name);
        cur = cur->cont.get();
      }
      if ((cur->kind == TypeKind::Var || cur->kind == TypeKind::NegVar) &&
          std::find(chain.begin(), chain.end(), cur->name) != chain.end()) {
        return false;
      }
      return is_contractive(t->cont);
    }
  }
  return true;
}

namespace {

TypeRef normalize_core(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::NegVar:
      return t;
    case TypeKind::In:
    case TypeKind::Out: {
      TypeRef m = normalize_core(t->msg);
      TypeRef c = normalize_core(t->cont);
      if (m == t->msg && c == t->cont) return t;
      return node(t->kind, "", std::move(m), std::move(c));
    }
    case TypeKind::Flip: {
      TypeRef b = normalize_core(t->cont);
      if (b == t->cont) return t;
      return make_flip(std::move(b));
    }
    case TypeKind::Rec: {
      TypeRef body = normalize_core(t->cont);
      while (body->kind == TypeKind::Rec) {
        // rec X.rec Y.S becomes rec X.S with both polarities of Y renamed
        // to X. Variable-for-variable renaming preserves normality.
        TypeRef inner = body->cont;
        inner = substitute(inner, {body->name, Polarity::Positive},
                           make_var(t->name));
        inner = substitute(inner, {body->name, Polarity::Negative},
                           make_neg_var(t->name));
        body = inner;
      }
      if (body->kind == TypeKind::Var || body->kind == TypeKind::NegVar) {
        assert(body->name != t->name);  // excluded by contractivity
        return body;
      }
      if (body == t->cont) return t;
      return make_rec(t->name, std::move(body));
    }
  }
  return t;
}

}  // namespace

TypeRef normalize(const TypeRef& t) {
  if (!is_contractive(t)) throw TypeError("normalize: non-contractive type");
  // Renaming first keeps the binder coalescing capture-free.
  return normalize_core(canonical_renamed(t));
}

namespace {

struct ScopeNames {
  // name -> stack of de Bruijn binder levels (innermost last)
  std::map<std::string, std::vector<std::size_t>> levels;
  std::size_t depth = 0;
};

void key_into(const TypeRef& t, ScopeNames& scope, std::string& out) {
  switch (t->kind) {
    case TypeKind::Int:
      out += 'i';
      return;
    case TypeKind::End:
      out += 'e';
      return;
    case TypeKind::Var:
    case TypeKind::NegVar: {
      const char pol = t->kind == TypeKind::Var ? '+' : '-';
      auto it = scope.levels.find(t->name);
      if (it != scope.levels.end() && !it->second.empty()) {
        out += 'b';
        out += std::to_string(scope.depth - 1 - it->second.back());
      } else {
        out += "f(";
        out += t->name;
        out += ')';
      }
      out += pol;
      return;
    }
    case TypeKind::In:
    case TypeKind::Out: {
      out += t->kind == TypeKind::In ? '?' : '!';
      out += '(';
      key_into(t->msg, scope, out);
      out += ")(";
      key_into(t->cont, scope, out);
      out += ')';
      return;
    }
    case TypeKind::Rec: {
      out += "r(";
      scope.levels[t->name].push_back(scope.depth);
      ++scope.depth;
      key_into(t->cont, scope, out);
      --scope.depth;
      scope.levels[t->name].pop_back();
      out += ')';
      return;
    }
    case TypeKind::Flip: {
      out += "F(";
      key_into(t->cont, scope, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string canon_key(const TypeRef& t) {
  std::string out;
  out.reserve(64);
  ScopeNames scope;
  key_into(t, scope, out);
  return out;
}

bool alpha_eq(const TypeRef& a, const TypeRef& b) {
  return canon_key(a) == canon_key(b);
}

std::size_t term_size(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::NegVar:
      return 1;
    case TypeKind::In:
    case TypeKind::Out:
      return term_size(t->msg) + term_size(t->cont);
    case TypeKind::Rec:
      return 1 + term_size(t->cont);
    case TypeKind::Flip:
      return term_size(t->cont);
  }
  return 1;
}

namespace {

struct Renamer {
  std::set<std::string> taken;
  std::map<std::string, std::vector<std::string>> env;

  std::string fresh(const std::string& base) {
    if (!taken.count(base)) return base;
    for (int k = 1;; ++k) {
      std::string candidate = base + std::to_string(k);
      if (!taken.count(candidate)) return candidate;
    }
  }

  TypeRef walk(const TypeRef& t) {
    switch (t->kind) {
      case TypeKind::Int:
      case TypeKind::End:
        return t;
      case TypeKind::Var:
      case TypeKind::NegVar: {
        auto it = env.find(t->name);
        if (it == env.end() || it->second.empty()) return t;  // free
        const std::string& renamed = it->second.back();
        if (renamed == t->name) return t;
        return t->kind == TypeKind::Var ? make_var(renamed)
                                        : make_neg_var(renamed);
      }
      case TypeKind::In:
      case TypeKind::Out: {
        TypeRef m = walk(t->msg);
        TypeRef c = walk(t->cont);
        if (m == t->msg && c == t->cont) return t;
        return node(t->kind, "", std::move(m), std::move(c));
      }
      case TypeKind::Rec: {
        std::string name = fresh(t->name);
        taken.insert(name);
        env[t->name].push_back(name);
        TypeRef body = walk(t->cont);
        env[t->name].pop_back();
        if (name == t->name && body == t->cont) return t;
        return make_rec(std::move(name), std::move(body));
      }
      case TypeKind::Flip: {
        TypeRef b = walk(t->cont);
        if (b == t->cont) return t;
        return make_flip(std::move(b));
      }
    }
    return t;
  }
};

}  // namespace

TypeRef canonical_renamed(const TypeRef& t) {
  Renamer r;
  for (const VarOcc& v : free_vars(t)) r.taken.insert(v.name);
  return r.walk(t);
}

namespace {

TypeRef unfold_walk(const TypeRef& t, const std::string& name,
                    const TypeRef& pos, const TypeRef& neg) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return t;
    case TypeKind::Var:
      return t->name == name ? pos : t;
    case TypeKind::NegVar:
      return t->name == name ? neg : t;
    case TypeKind::In:
    case TypeKind::Out: {
      TypeRef m = unfold_walk(t->msg, name, pos, neg);
      TypeRef c = unfold_walk(t->cont, name, pos, neg);
      if (m == t->msg && c == t->cont) return t;
      return node(t->kind, "", std::move(m), std::move(c));
    }
    case TypeKind::Rec: {
      if (t->name == name) return t;
      TypeRef b = unfold_walk(t->cont, name, pos, neg);
      if (b == t->cont) return t;
      return make_rec(t->name, std::move(b));
    }
    case TypeKind::Flip: {
      TypeRef b = unfold_walk(t->cont, name, pos, neg);
      if (b == t->cont) return t;
      return make_flip(std::move(b));
    }
  }
  return t;
}

}  // namespace

TypeRef unfold_rec(const TypeRef& rec) {
  assert(rec->kind == TypeKind::Rec);
  return unfold_walk(rec->cont, rec->name, rec, make_flip(rec));
}

}  // namespace dualist
