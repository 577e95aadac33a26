#include "dualist/properties.hpp"

#include <functional>
#include <map>

#include "dualist/checkers.hpp"
#include "dualist/dualities.hpp"
#include "dualist/generator.hpp"
#include "dualist/parser.hpp"
#include "dualist/semantics.hpp"

namespace dualist {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<TypeRef> make_corpus(const SuiteOptions& o, bool neg_vars,
                                 bool tailrec) {
  std::vector<TypeRef> out;
  out.reserve(static_cast<std::size_t>(o.count));
  const std::uint64_t salt =
      (neg_vars ? 0xA5A50000ull : 0ull) ^ (tailrec ? 0x5A5Aull : 0ull);
  for (int i = 0; i < o.count; ++i) {
    GenConfig cfg;
    cfg.seed = mix(o.seed ^ salt, static_cast<std::uint64_t>(i));
    cfg.max_depth = o.max_depth;
    cfg.allow_neg_vars = neg_vars;
    cfg.tailrec_only = tailrec;
    out.push_back(gen_type(cfg));
  }
  return out;
}

using Pred = std::function<bool(const TypeRef&)>;

bool run_pred(const Pred& p, const TypeRef& t, std::string* err = nullptr) {
  try {
    return p(t);
  } catch (const std::exception& e) {
    if (err) *err = e.what();
    return false;
  }
}

TypeRef shrink_failing(TypeRef t, const Pred& p) {
  for (int guard = 0; guard < 1000; ++guard) {
    bool moved = false;
    for (const TypeRef& candidate : shrink(t)) {
      if (!run_pred(p, candidate)) {
        t = candidate;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return t;
}

PropertyResult run_each(const std::string& name,
                        const std::vector<TypeRef>& corpus, const Pred& p) {
  PropertyResult r;
  r.name = name;
  for (const TypeRef& t : corpus) {
    ++r.runs;
    std::string err;
    if (!run_pred(p, t, &err)) {
      ++r.failures;
      if (r.note.empty()) {
        TypeRef small = shrink_failing(t, p);
        r.note = "counterexample: " + print(small);
        if (!err.empty()) r.note += " (" + err + ")";
      }
    }
  }
  r.pass = r.failures == 0;
  return r;
}

// Accumulator for properties that are not a single-type predicate.
struct Tally {
  PropertyResult r;
  explicit Tally(std::string name) { r.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& describe) {
    ++r.runs;
    if (!ok) {
      ++r.failures;
      if (r.note.empty()) r.note = describe();
    }
  }
  PropertyResult done() {
    r.pass = r.failures == 0;
    return r;
  }
};

bool struct_eq(const TypeRef& a, const TypeRef& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if ((a->msg == nullptr) != (b->msg == nullptr)) return false;
  if ((a->cont == nullptr) != (b->cont == nullptr)) return false;
  if (a->msg && !struct_eq(a->msg, b->msg)) return false;
  if (a->cont && !struct_eq(a->cont, b->cont)) return false;
  return true;
}

TypeRef relabel_binders(const TypeRef& t,
                        std::map<std::string, std::string>& env,
                        int& counter, const std::string& prefix) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return t;
    case TypeKind::Var:
    case TypeKind::NegVar: {
      auto it = env.find(t->name);
      if (it == env.end()) return t;
      return t->kind == TypeKind::Var ? make_var(it->second)
                                      : make_neg_var(it->second);
    }
    case TypeKind::In:
    case TypeKind::Out: {
      TypeRef m = relabel_binders(t->msg, env, counter, prefix);
      TypeRef c = relabel_binders(t->cont, env, counter, prefix);
      return t->kind == TypeKind::In ? make_in(std::move(m), std::move(c))
                                     : make_out(std::move(m), std::move(c));
    }
    case TypeKind::Rec: {
      std::string fresh = prefix + std::to_string(counter++);
      auto saved = env.find(t->name) != env.end()
                       ? std::optional<std::string>(env[t->name])
                       : std::nullopt;
      env[t->name] = fresh;
      TypeRef body = relabel_binders(t->cont, env, counter, prefix);
      if (saved)
        env[t->name] = *saved;
      else
        env.erase(t->name);
      return make_rec(std::move(fresh), std::move(body));
    }
    case TypeKind::Flip:
      return make_flip(relabel_binders(t->cont, env, counter, prefix));
  }
  return t;
}

TypeRef relabel_binders(const TypeRef& t, const std::string& prefix) {
  std::map<std::string, std::string> env;
  int counter = 0;
  return relabel_binders(t, env, counter, prefix);
}

bool has_open_message(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::NegVar:
      return false;
    case TypeKind::In:
    case TypeKind::Out:
      if (!free_vars(t->msg).empty()) return true;
      return has_open_message(t->msg) || has_open_message(t->cont);
    case TypeKind::Rec:
    case TypeKind::Flip:
      return has_open_message(t->cont);
  }
  return false;
}

void collect_session_subterms(const TypeRef& t, std::vector<TypeRef>& out) {
  if (t->kind == TypeKind::Int) return;
  out.push_back(t);
  switch (t->kind) {
    case TypeKind::In:
    case TypeKind::Out:
      collect_session_subterms(t->msg, out);
      collect_session_subterms(t->cont, out);
      return;
    case TypeKind::Rec:
    case TypeKind::Flip:
      collect_session_subterms(t->cont, out);
      return;
    default:
      return;
  }
}

// Descends through binders and continuations collecting the closing
// sequence the way the closure operations build it (innermost first).
struct Peeled {
  TypeRef term;
  SubstSeq sigma;
  std::vector<std::string> binders;  // outermost first
};

Peeled peel(const TypeRef& t, int steps) {
  Peeled p{t, {}, {}};
  while (steps-- > 0) {
    if (p.term->kind == TypeKind::Rec) {
      p.sigma.insert(p.sigma.begin(),
                     {{p.term->name, Polarity::Positive}, p.term});
      p.binders.push_back(p.term->name);
      p.term = p.term->cont;
    } else if (p.term->kind == TypeKind::In ||
               p.term->kind == TypeKind::Out) {
      p.term = p.term->cont;
    } else {
      break;
    }
  }
  return p;
}

std::size_t count_mu_flip(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::NegVar:
      return 0;
    case TypeKind::In:
    case TypeKind::Out:
      return count_mu_flip(t->msg) + count_mu_flip(t->cont);
    case TypeKind::Rec:
    case TypeKind::Flip:
      return 1 + count_mu_flip(t->cont);
  }
  return 0;
}

// Subterm/context pairs with tail-recursive instances, drawn from the
// tail-recursive corpus.
struct CtxSample {
  TypeRef term;
  TailRecContext ctx;
};

void collect_ctx_samples(const TypeRef& t, TailRecContext ctx,
                         std::vector<CtxSample>& out) {
  out.push_back({t, ctx});
  switch (t->kind) {
    case TypeKind::In:
    case TypeKind::Out:
      collect_ctx_samples(t->msg, TailRecContext{}, out);
      collect_ctx_samples(t->cont, ctx, out);
      return;
    case TypeKind::Rec:
      ctx.insert(t->name);
      collect_ctx_samples(t->cont, ctx, out);
      return;
    default:
      return;
  }
}

bool normal_shape(const TypeRef& t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::NegVar:
      return true;
    case TypeKind::In:
    case TypeKind::Out:
      return normal_shape(t->msg) && normal_shape(t->cont);
    case TypeKind::Flip:
      return normal_shape(t->cont);
    case TypeKind::Rec: {
      TypeKind body = t->cont->kind;
      if (body == TypeKind::Rec || body == TypeKind::Var ||
          body == TypeKind::NegVar) {
        return false;
      }
      return normal_shape(t->cont);
    }
  }
  return true;
}

std::string pair_text(const TypeRef& a, const TypeRef& b) {
  return "left: " + print(a) + "  right: " + print(b);
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const SuiteOptions& opts) {
  std::vector<PropertyResult> results;

  const std::vector<TypeRef> plain = make_corpus(opts, false, false);
  const std::vector<TypeRef> negs = make_corpus(opts, true, false);
  const std::vector<TypeRef> tails = make_corpus(opts, false, true);

  std::vector<TypeRef> plain_and_negs = plain;
  plain_and_negs.insert(plain_and_negs.end(), negs.begin(), negs.end());

  // Generator postconditions.
  {
    Tally t("gen-closed-contractive");
    for (const std::vector<TypeRef>* corpus : {&plain, &negs, &tails}) {
      for (const TypeRef& s : *corpus) {
        t.check(is_closed(s) && is_contractive(s),
                [&] { return "counterexample: " + print(s); });
      }
    }
    results.push_back(t.done());
  }
  {
    Tally t("gen-deterministic");
    for (int i = 0; i < std::min(opts.count, 32); ++i) {
      GenConfig cfg;
      cfg.seed = mix(opts.seed, static_cast<std::uint64_t>(i));
      cfg.max_depth = opts.max_depth;
      TypeRef a = gen_type(cfg);
      TypeRef b = gen_type(cfg);
      t.check(struct_eq(a, b) && alpha_eq(a, b),
              [&] { return pair_text(a, b); });
    }
    results.push_back(t.done());
  }
  results.push_back(run_each("gen-tailrec-only", tails,
                             [](const TypeRef& s) { return is_tailrec(s); }));
  {
    Tally t("gen-open-message-coverage");
    bool found = false;
    for (const TypeRef& s : plain) found = found || has_open_message(s);
    t.check(found, [] {
      return std::string(
          "no generated type has a binder-bound variable in message position");
    });
    results.push_back(t.done());
  }
  {
    Tally t("gen-negvar-coverage");
    bool found = false;
    for (const TypeRef& s : negs) found = found || contains_neg_var(s);
    t.check(found,
            [] { return std::string("no generated type has a ~X occurrence"); });
    results.push_back(t.done());
  }
  {
    Tally t("shrink-candidates-wellformed");
    for (std::size_t i = 0; i < plain.size(); i += 7) {
      const TypeRef& s = plain[i];
      for (const TypeRef& candidate : shrink(s)) {
        t.check(is_closed(candidate) && is_contractive(candidate) &&
                    term_size(candidate) < term_size(s),
                [&] { return "from " + print(s) + ": " + print(candidate); });
      }
    }
    results.push_back(t.done());
  }

  // Core syntax.
  results.push_back(run_each("swap-polarity-involution", negs,
                             [](const TypeRef& s) {
                               std::string name = "X0";
                               return struct_eq(
                                   swap_polarity(swap_polarity(s, name), name),
                                   s);
                             }));
  results.push_back(run_each("identity-substitution", negs, [](const TypeRef& s) {
    TypeRef pos = substitute(s, {"X0", Polarity::Positive}, make_var("X0"));
    TypeRef neg = substitute(s, {"X0", Polarity::Negative}, make_neg_var("X0"));
    return struct_eq(pos, s) && struct_eq(neg, s);
  }));
  {
    Tally t("alpha-eq-variants");
    for (const TypeRef& s : plain_and_negs) {
      TypeRef variant = relabel_binders(s, "A");
      t.check(alpha_eq(s, variant) && alpha_eq(variant, s) && alpha_eq(s, s) &&
                  term_size(variant) == term_size(s),
              [&] { return pair_text(s, variant); });
    }
    results.push_back(t.done());
  }
  {
    Tally t("substitute-respects-alpha");
    for (std::size_t i = 0; i < plain.size(); ++i) {
      Peeled p = peel(plain[i], static_cast<int>(i % 5) + 1);
      auto fv = free_vars(p.term);
      if (fv.empty()) continue;
      const VarOcc& target = *fv.begin();
      const TypeRef& replacement = plain[(i + 1) % plain.size()];
      TypeRef lhs = substitute(p.term, target, replacement);
      TypeRef rhs = substitute(relabel_binders(p.term, "B"), target,
                               relabel_binders(replacement, "C"));
      t.check(alpha_eq(lhs, rhs), [&] { return pair_text(lhs, rhs); });
    }
    results.push_back(t.done());
  }
  {
    Tally t("closing-sequence-closes");
    for (std::size_t i = 0; i < plain.size(); ++i) {
      Peeled p = peel(plain[i], static_cast<int>(i % 6));
      t.check(free_vars(apply_subst_seq(p.term, p.sigma)).empty(), [&] {
        return "peeled " + print(p.term) + " of " + print(plain[i]);
      });
    }
    results.push_back(t.done());
  }

  // Parser round trips.
  results.push_back(run_each("parse-print-roundtrip", plain_and_negs,
                             [](const TypeRef& s) {
                               return alpha_eq(parse(print(s)), s);
                             }));
  results.push_back(run_each("print-idempotent", plain_and_negs,
                             [](const TypeRef& s) {
                               std::string once = print(s);
                               return print(parse(once)) == once;
                             }));

  // Normal forms.
  results.push_back(run_each("normalize-normal-form", plain_and_negs,
                             [](const TypeRef& s) {
                               TypeRef n = normalize(s);
                               return normal_shape(n) &&
                                      tree_equal(tree_of(n), tree_of(s)).ok;
                             }));

  // Tree semantics.
  results.push_back(run_each("coidual-involution", plain_and_negs,
                             [](const TypeRef& s) {
                               SemState st = tree_of(s);
                               return tree_equal(dual_tree(dual_tree(st)), st)
                                   .ok;
                             }));
  {
    Tally t("reachable-finite-msg-even-rewrite-bound");
    for (const TypeRef& s : plain_and_negs) {
      const std::size_t size = term_size(s);
      std::vector<SemState> states = reachable_states(tree_of(s));
      t.check(states.size() <= 2 * size * size, [&] {
        return print(s) + ": " + std::to_string(states.size()) + " states";
      });
      for (const SemState& st : states) {
        std::size_t steps = 0;
        HeadForm h = head_normal(st, &steps);
        bool ok = steps <= count_mu_flip(st.term) + 1;
        if (h.msg) ok = ok && h.msg->parity == Parity::Even;
        t.check(ok, [&] { return "state of " + print(s); });
      }
    }
    results.push_back(t.done());
  }
  {
    Tally t("tree-equal-equivalence");
    for (std::size_t i = 0; i < plain_and_negs.size(); i += 5) {
      const TypeRef& s = plain_and_negs[i];
      SemState a = tree_of(s);
      SemState b = tree_of(normalize(s));
      SemState c = tree_of(parse(print(s)));
      bool refl = tree_equal(a, a).ok;
      bool sym = tree_equal(a, b).ok == tree_equal(b, a).ok;
      bool trans = !(tree_equal(a, b).ok && tree_equal(b, c).ok) ||
                   tree_equal(a, c).ok;
      t.check(refl && sym && trans, [&] { return print(s); });
    }
    results.push_back(t.done());
  }

  // Syntactic checkers against the tree semantics.
  results.push_back(run_each("equiv-reflexive", plain_and_negs,
                             [](const TypeRef& s) {
                               return check_equiv(s, s).ok;
                             }));
  {
    Tally equiv_agree("equiv-agrees-with-trees");
    Tally dual_agree("dual-agrees-with-trees");
    Tally symmetric("dual-symmetric");
    Tally budget("checker-pair-budget");
    const std::size_t n = plain_and_negs.size();
    for (std::size_t i = 0; i < n; ++i) {
      const TypeRef& a = plain_and_negs[i];
      const TypeRef variants[] = {a, normalize(a), plain_and_negs[(i + 1) % n]};
      for (const TypeRef& b : variants) {
        CheckReport syntactic = check_equiv(a, b);
        CheckReport semantic = tree_equal(tree_of(a), tree_of(b));
        equiv_agree.check(syntactic.ok == semantic.ok,
                          [&] { return pair_text(a, b); });
        budget.check(syntactic.pairs_explored <=
                         4 * term_size(a) * term_size(b),
                     [&] {
                       return pair_text(a, b) + " explored " +
                              std::to_string(syntactic.pairs_explored);
                     });
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const TypeRef& a = plain_and_negs[i];
      const bool plain_input = i < plain.size();
      std::vector<TypeRef> partners = {lm_dual(a),
                                       lm_dual(plain_and_negs[(i + 1) % n])};
      if (plain_input) partners.push_back(closing_dual(a));
      for (const TypeRef& b : partners) {
        CheckReport syntactic = check_dual(a, b);
        CheckReport semantic = tree_dual(tree_of(a), tree_of(b));
        dual_agree.check(syntactic.ok == semantic.ok,
                         [&] { return pair_text(a, b); });
        symmetric.check(syntactic.ok == check_dual(b, a).ok,
                        [&] { return pair_text(a, b); });
        budget.check(syntactic.pairs_explored <=
                         4 * term_size(a) * term_size(b),
                     [&] {
                       return pair_text(a, b) + " explored " +
                              std::to_string(syntactic.pairs_explored);
                     });
      }
    }
    results.push_back(equiv_agree.done());
    results.push_back(dual_agree.done());
    results.push_back(symmetric.done());
    results.push_back(budget.done());
  }

  // Dual constructions.
  results.push_back(run_each("mcdual-equals-dual-of-mcl", plain,
                             [](const TypeRef& s) {
                               return alpha_eq(mc_dual(s),
                                               naive_dual(message_closure(s)));
                             }));
  results.push_back(run_each("mcdual-equals-cdual", plain, [](const TypeRef& s) {
    TypeRef a = mc_dual(s);
    TypeRef b = closing_dual(s);
    // Generated names are canonical, so the stricter structural check must
    // agree as well.
    return alpha_eq(a, b) && struct_eq(a, b);
  }));
  {
    Tally t("lm-equals-lmp");
    for (const TypeRef& s : plain) {
      std::vector<TypeRef> subs;
      collect_session_subterms(s, subs);
      for (const TypeRef& sub : subs) {
        t.check(alpha_eq(lm_dual(sub), lmp_dual(sub)),
                [&] { return "subterm: " + print(sub); });
      }
    }
    results.push_back(t.done());
  }
  results.push_back(run_each("lm-lmp-preserve-size", negs, [](const TypeRef& s) {
    return term_size(lm_dual(s)) == term_size(s) &&
           term_size(lmp_dual(s)) == term_size(s);
  }));
  results.push_back(run_each("cdual-tree-sound", plain, [](const TypeRef& s) {
    return tree_dual(tree_of(closing_dual(s)), tree_of(s)).ok;
  }));
  results.push_back(run_each("mcdual-tree-sound", plain, [](const TypeRef& s) {
    return tree_dual(tree_of(mc_dual(s)), tree_of(s)).ok;
  }));
  results.push_back(run_each("mcl-then-naive-tree-sound", plain,
                             [](const TypeRef& s) {
                               TypeRef d = naive_dual(message_closure(s));
                               return tree_dual(tree_of(d), tree_of(s)).ok;
                             }));
  results.push_back(run_each("lm-tree-sound", negs, [](const TypeRef& s) {
    return tree_equal(dual_tree(tree_of(s)), tree_of(lm_dual(s))).ok;
  }));
  results.push_back(run_each("cdual-involution-on-trees", plain,
                             [](const TypeRef& s) {
                               TypeRef twice = closing_dual(closing_dual(s));
                               return tree_equal(tree_of(twice), tree_of(s)).ok;
                             }));
  results.push_back(run_each("mcl-is-tailrec", plain, [](const TypeRef& s) {
    return is_tailrec(message_closure(s));
  }));
  {
    Tally t("mcl-under-binders-tailrec");
    for (std::size_t i = 0; i < plain.size(); ++i) {
      Peeled p = peel(plain[i], static_cast<int>(i % 6));
      if (contains_neg_var(p.term)) continue;
      TailRecContext dom(p.binders.begin(), p.binders.end());
      bool ok = run_pred(
          [&](const TypeRef& term) {
            TypeRef closed = message_closure(term, p.sigma);
            return is_tailrec(closed, dom) &&
                   alpha_eq(mc_dual(term, p.sigma), naive_dual(closed));
          },
          p.term);
      t.check(ok, [&] { return "peeled " + print(p.term); });
    }
    results.push_back(t.done());
  }
  {
    Tally fv_subset("tailrec-implies-fv-subset");
    Tally strengthen("tailrec-strengthening");
    for (std::size_t i = 0; i < tails.size(); i += 3) {
      std::vector<CtxSample> samples;
      collect_ctx_samples(tails[i], TailRecContext{}, samples);
      for (const CtxSample& sample : samples) {
        if (is_tailrec(sample.term, sample.ctx)) {
          bool subset = true;
          for (const VarOcc& v : free_vars(sample.term)) {
            if (v.polarity != Polarity::Positive || !sample.ctx.count(v.name))
              subset = false;
          }
          fv_subset.check(subset, [&] { return print(sample.term); });
        }
        TailRecContext widened = sample.ctx;
        widened.insert("Q999");
        if (is_tailrec(sample.term, widened)) {
          strengthen.check(is_tailrec(sample.term, sample.ctx),
                           [&] { return print(sample.term); });
        }
      }
    }
    results.push_back(fv_subset.done());
    results.push_back(strengthen.done());
  }
  results.push_back(run_each("naive-sound-on-tailrec", tails,
                             [](const TypeRef& s) {
                               return check_dual(s, naive_dual(s)).ok;
                             }));
  results.push_back(run_each("dual-uniqueness-on-trees", plain,
                             [](const TypeRef& s) {
                               SemState base = tree_of(s);
                               SemState d1 = tree_of(lm_dual(s));
                               SemState d2 = tree_of(closing_dual(s));
                               return tree_dual(base, d1).ok &&
                                      tree_dual(base, d2).ok &&
                                      tree_equal(d1, d2).ok;
                             }));

  // The one property expected to fail: naive duality on unrestricted types.
  {
    PropertyResult r;
    r.name = "naive-dual-flaw-found";
    Pred sound = [](const TypeRef& s) {
      return check_dual(s, naive_dual(s)).ok;
    };
    bool shape_ok = false;
    for (const TypeRef& s : plain) {
      ++r.runs;
      if (!run_pred(sound, s)) {
        ++r.failures;
        if (r.note.empty()) {
          TypeRef small = shrink_failing(s, sound);
          shape_ok = has_open_message(small);
          r.note = "counterexample: " + print(small);
          if (!shape_ok) r.note += " (no open message after shrinking!)";
        }
      }
    }
    r.pass = r.failures > 0 && shape_ok;
    if (r.failures == 0)
      r.note = "naive duality survived the whole corpus";
    results.push_back(r);
  }

  return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
  for (const PropertyResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace dualist
