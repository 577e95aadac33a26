#include "dualist/generator.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace dualist {

namespace {

struct Gen {
  std::mt19937_64 rng;
  const GenConfig& cfg;
  int next_binder = 0;

  explicit Gen(const GenConfig& c) : rng(c.seed), cfg(c) {}

  // mt19937_64 output is standardized, so modulo keeps generation
  // deterministic across platforms; the bias is irrelevant here.
  std::uint64_t below(std::uint64_t n) { return rng() % n; }

  std::string fresh_binder() { return "X" + std::to_string(next_binder++); }

  TypeRef variable(const std::vector<std::string>& vars) {
    const std::string& name = vars[below(vars.size())];
    // Negative variables are never tail recursive.
    if (cfg.allow_neg_vars && !cfg.tailrec_only && below(2) == 0)
      return make_neg_var(name);
    return make_var(name);
  }

  TypeRef session(int depth, const std::vector<std::string>& vars,
                  bool no_bare_var) {
    const GenConfig::Weights& w = cfg.weights;
    const bool can_var = !vars.empty() && !no_bare_var;
    if (depth >= cfg.max_depth) {
      const int total = w.leaf_end + (can_var ? w.leaf_var : 0);
      if (total > 0 && can_var &&
          below(static_cast<std::uint64_t>(total)) >=
              static_cast<std::uint64_t>(w.leaf_end)) {
        return variable(vars);
      }
      return make_end();
    }
    const int w_var = can_var ? w.leaf_var : 0;
    const int total = w.leaf_end + w_var + w.in_out + w.rec;
    std::uint64_t roll = below(static_cast<std::uint64_t>(total));
    if (roll < static_cast<std::uint64_t>(w.leaf_end)) return make_end();
    roll -= w.leaf_end;
    if (roll < static_cast<std::uint64_t>(w_var)) return variable(vars);
    roll -= w_var;
    if (roll < static_cast<std::uint64_t>(w.in_out)) {
      const bool in = below(2) == 0;
      TypeRef msg = message(depth + 1, vars);
      TypeRef cont = session(depth + 1, vars, false);
      return in ? make_in(std::move(msg), std::move(cont))
                : make_out(std::move(msg), std::move(cont));
    }
    std::string name = fresh_binder();
    std::vector<std::string> extended = vars;
    extended.push_back(name);
    TypeRef body = session(depth + 1, extended, /*no_bare_var=*/true);
    return make_rec(std::move(name), std::move(body));
  }

  TypeRef message(int depth, const std::vector<std::string>& vars) {
    const GenConfig::Weights& w = cfg.weights;
    const int total = w.msg_int + w.msg_session;
    if (below(static_cast<std::uint64_t>(total)) <
        static_cast<std::uint64_t>(w.msg_int)) {
      return make_int();
    }
    if (cfg.tailrec_only) {
      // Tail recursion demands closed messages.
      return session(depth, {}, false);
    }
    return session(depth, vars, false);
  }
};

void validate(const GenConfig& cfg) {
  const GenConfig::Weights& w = cfg.weights;
  if (cfg.max_depth < 1) throw TypeError("gen_type: max_depth must be >= 1");
  if (w.leaf_end < 0 || w.leaf_var < 0 || w.in_out < 0 || w.rec < 0 ||
      w.msg_int < 0 || w.msg_session < 0) {
    throw TypeError("gen_type: weights must be non-negative");
  }
  if (w.leaf_end + w.leaf_var + w.in_out + w.rec == 0 ||
      w.msg_int + w.msg_session == 0 || w.leaf_end == 0) {
    throw TypeError("gen_type: weights leave no way to finish a type");
  }
}

}  // namespace

TypeRef gen_type(const GenConfig& cfg) {
  validate(cfg);
  Gen gen(cfg);
  return gen.session(0, {}, false);
}

namespace {

using Rebuild = std::function<TypeRef(TypeRef)>;

TypeRef drop_rec(const TypeRef& rec) {
  TypeRef body = substitute(rec->cont, {rec->name, Polarity::Positive},
                            make_end());
  return substitute(body, {rec->name, Polarity::Negative}, make_end());
}

void candidates(const TypeRef& t, const Rebuild& rebuild,
                std::vector<TypeRef>& out) {
  if (t->kind != TypeKind::End) out.push_back(rebuild(make_end()));
  switch (t->kind) {
    case TypeKind::In:
    case TypeKind::Out: {
      if (t->msg->kind != TypeKind::Int) {
        out.push_back(rebuild(t->kind == TypeKind::In
                                  ? make_in(make_int(), t->cont)
                                  : make_out(make_int(), t->cont)));
      }
      TypeKind kind = t->kind;
      TypeRef msg = t->msg, cont = t->cont;
      candidates(t->msg,
                 [&, kind, cont](TypeRef sub) {
                   return rebuild(kind == TypeKind::In
                                      ? make_in(std::move(sub), cont)
                                      : make_out(std::move(sub), cont));
                 },
                 out);
      candidates(t->cont,
                 [&, kind, msg](TypeRef sub) {
                   return rebuild(kind == TypeKind::In
                                      ? make_in(msg, std::move(sub))
                                      : make_out(msg, std::move(sub)));
                 },
                 out);
      return;
    }
    case TypeKind::Rec: {
      out.push_back(rebuild(drop_rec(t)));
      std::string name = t->name;
      candidates(t->cont,
                 [&, name](TypeRef sub) {
                   return rebuild(make_rec(name, std::move(sub)));
                 },
                 out);
      return;
    }
    default:
      return;
  }
}

}  // namespace

std::vector<TypeRef> shrink(const TypeRef& t) {
  std::vector<TypeRef> raw;
  candidates(t, [](TypeRef sub) { return sub; }, raw);

  const std::size_t limit = term_size(t);
  std::vector<TypeRef> out;
  std::set<std::string> seen;
  for (const TypeRef& candidate : raw) {
    if (term_size(candidate) >= limit) continue;
    if (!is_closed(candidate) || !is_contractive(candidate)) continue;
    if (!seen.insert(canon_key(candidate)).second) continue;
    out.push_back(candidate);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TypeRef& a, const TypeRef& b) {
                     return term_size(a) < term_size(b);
                   });
  return out;
}

}  // namespace dualist
