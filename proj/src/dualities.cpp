#include "dualist/dualities.hpp"

#include "dualist/parser.hpp"

namespace dualist {

namespace {

[[noreturn]] void reject(const std::string& what) { throw TypeError(what); }

TypeRef naive_walk(const TypeRef& s) {
  switch (s->kind) {
    case TypeKind::End:
      return s;
    case TypeKind::Var:
      return s;
    case TypeKind::In:
      return make_out(s->msg, naive_walk(s->cont));
    case TypeKind::Out:
      return make_in(s->msg, naive_walk(s->cont));
    case TypeKind::Rec:
      return make_rec(s->name, naive_walk(s->cont));
    case TypeKind::Int:
      reject("naive_dual: int is not a session type");
    case TypeKind::NegVar:
    case TypeKind::Flip:
      reject("naive_dual: negative variables are outside its domain");
  }
  return s;
}

}  // namespace

TypeRef naive_dual(const TypeRef& s) {
  if (contains_neg_var(s))
    reject("naive_dual: negative variables are outside its domain");
  return naive_walk(s);
}

bool is_tailrec(const TypeRef& t, const TailRecContext& ctx) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::End:
      return true;
    case TypeKind::Var:
      return ctx.count(t->name) > 0;
    case TypeKind::NegVar:
    case TypeKind::Flip:
      return false;
    case TypeKind::In:
    case TypeKind::Out:
      return is_tailrec(t->msg, TailRecContext{}) && is_tailrec(t->cont, ctx);
    case TypeKind::Rec: {
      TailRecContext extended = ctx;
      extended.insert(t->name);
      return is_tailrec(t->cont, extended);
    }
  }
  return false;
}

bool is_tailrec(const TypeRef& t) { return is_tailrec(t, TailRecContext{}); }

namespace {

TypeRef closed_message(const TypeRef& msg, const SubstSeq& sigma,
                       const char* who) {
  TypeRef closed = apply_subst_seq(msg, sigma);
  if (!is_closed(closed)) {
    reject(std::string(who) +
           ": substitution sequence does not close message '" + print(closed) +
           "'");
  }
  return closed;
}

SubstSeq prepend_binder(const TypeRef& rec, const SubstSeq& sigma) {
  SubstSeq inner;
  inner.reserve(sigma.size() + 1);
  inner.push_back({{rec->name, Polarity::Positive}, rec});
  inner.insert(inner.end(), sigma.begin(), sigma.end());
  return inner;
}

TypeRef mcl_walk(const TypeRef& t, const SubstSeq& sigma) {
  switch (t->kind) {
    case TypeKind::End:
    case TypeKind::Var:
    case TypeKind::Int:
      return t;
    case TypeKind::In:
      return make_in(closed_message(t->msg, sigma, "message_closure"),
                     mcl_walk(t->cont, sigma));
    case TypeKind::Out:
      return make_out(closed_message(t->msg, sigma, "message_closure"),
                      mcl_walk(t->cont, sigma));
    case TypeKind::Rec:
      return make_rec(t->name, mcl_walk(t->cont, prepend_binder(t, sigma)));
    case TypeKind::NegVar:
    case TypeKind::Flip:
      reject("message_closure: negative variables are outside its domain");
  }
  return t;
}

TypeRef mc_dual_walk(const TypeRef& t, const SubstSeq& sigma) {
  switch (t->kind) {
    case TypeKind::End:
    case TypeKind::Var:
      return t;
    case TypeKind::In:
      return make_out(closed_message(t->msg, sigma, "mc_dual"),
                      mc_dual_walk(t->cont, sigma));
    case TypeKind::Out:
      return make_in(closed_message(t->msg, sigma, "mc_dual"),
                     mc_dual_walk(t->cont, sigma));
    case TypeKind::Rec:
      return make_rec(t->name, mc_dual_walk(t->cont, prepend_binder(t, sigma)));
    case TypeKind::Int:
      reject("mc_dual: int is not a session type");
    case TypeKind::NegVar:
    case TypeKind::Flip:
      reject("mc_dual: negative variables are outside its domain");
  }
  return t;
}

}  // namespace

TypeRef message_closure(const TypeRef& t, const SubstSeq& sigma) {
  if (contains_neg_var(t))
    reject("message_closure: negative variables are outside its domain");
  return mcl_walk(t, sigma);
}

TypeRef message_closure(const TypeRef& t) {
  if (!is_closed(t))
    reject("message_closure: type must be closed "
           "(or pass a closing substitution sequence)");
  return message_closure(t, SubstSeq{});
}

TypeRef mc_dual(const TypeRef& s, const SubstSeq& sigma) {
  if (contains_neg_var(s))
    reject("mc_dual: negative variables are outside its domain");
  return mc_dual_walk(s, sigma);
}

TypeRef mc_dual(const TypeRef& s) {
  if (!is_closed(s))
    reject("mc_dual: type must be closed "
           "(or pass a closing substitution sequence)");
  return mc_dual(s, SubstSeq{});
}

TypeRef lm_dual(const TypeRef& s) {
  switch (s->kind) {
    case TypeKind::End:
      return s;
    case TypeKind::Var:
      return make_neg_var(s->name);
    case TypeKind::NegVar:
      return make_var(s->name);
    case TypeKind::In:
      return make_out(s->msg, lm_dual(s->cont));
    case TypeKind::Out:
      return make_in(s->msg, lm_dual(s->cont));
    case TypeKind::Rec:
      return make_rec(s->name, swap_polarity(lm_dual(s->cont), s->name));
    case TypeKind::Int:
      reject("lm_dual: int is not a session type");
    case TypeKind::Flip:
      reject("lm_dual: internal marker outside its domain");
  }
  return s;
}

TypeRef lmp_dual(const TypeRef& s) {
  switch (s->kind) {
    case TypeKind::End:
      return s;
    case TypeKind::Var:
      return make_neg_var(s->name);
    case TypeKind::NegVar:
      return make_var(s->name);
    case TypeKind::In:
      return make_out(s->msg, lmp_dual(s->cont));
    case TypeKind::Out:
      return make_in(s->msg, lmp_dual(s->cont));
    case TypeKind::Rec: {
      TypeRef presubst = substitute(s->cont, {s->name, Polarity::Positive},
                                    make_neg_var(s->name));
      return make_rec(s->name, lmp_dual(presubst));
    }
    case TypeKind::Int:
      reject("lmp_dual: int is not a session type");
    case TypeKind::Flip:
      reject("lmp_dual: internal marker outside its domain");
  }
  return s;
}

TypeRef closing_dual(const TypeRef& s) {
  switch (s->kind) {
    case TypeKind::End:
      return s;
    case TypeKind::Var:
      return make_neg_var(s->name);
    case TypeKind::NegVar:
      return make_var(s->name);
    case TypeKind::In:
      return make_out(s->msg, closing_dual(s->cont));
    case TypeKind::Out:
      return make_in(s->msg, closing_dual(s->cont));
    case TypeKind::Rec: {
      TypeRef presubst = substitute(s->cont, {s->name, Polarity::Positive},
                                    make_neg_var(s->name));
      TypeRef dualized = closing_dual(presubst);
      TypeRef plugged =
          substitute(dualized, {s->name, Polarity::Negative}, s);
      return make_rec(s->name, std::move(plugged));
    }
    case TypeKind::Int:
      reject("closing_dual: int is not a session type");
    case TypeKind::Flip:
      reject("closing_dual: internal marker outside its domain");
  }
  return s;
}

}  // namespace dualist
