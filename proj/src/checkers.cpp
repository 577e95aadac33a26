#include "dualist/checkers.hpp"

#include <set>

namespace dualist {

namespace {

// One side of a pair: a closed term plus the number of pending spine
// dualizations mod 2, accumulated from Flip markers met on the spine.
struct Side {
  TypeRef term;
  bool odd = false;
};

Side expose(Side s) {
  while (s.term->kind == TypeKind::Flip) {
    s = {s.term->cont, !s.odd};
  }
  return s;
}

enum class Head { End, Int, Inp, Outp };

const char* head_label(Head h) {
  switch (h) {
    case Head::End: return "end";
    case Head::Int: return "int";
    case Head::Inp: return "in";
    case Head::Outp: return "out";
  }
  return "?";
}

// Effective head of an exposed non-rec side.
Head head_of(const Side& s) {
  switch (s.term->kind) {
    case TypeKind::End: return Head::End;
    case TypeKind::Int: return Head::Int;
    case TypeKind::In: return s.odd ? Head::Outp : Head::Inp;
    case TypeKind::Out: return s.odd ? Head::Inp : Head::Outp;
    default:
      throw TypeError("checker: open term reached");
  }
}

bool opposite(Head a, Head b) {
  return (a == Head::Inp && b == Head::Outp) ||
         (a == Head::Outp && b == Head::Inp) ||
         (a == Head::End && b == Head::End);
}

struct Context {
  std::set<std::string> equiv_seen;
  std::set<std::string> dual_seen;
  std::size_t explored = 0;
};

std::string pair_key(const Side& l, const Side& r) {
  std::string key = canon_key(l.term);
  key += l.odd ? "|1\x1f" : "|0\x1f";
  key += canon_key(r.term);
  key += r.odd ? "|1" : "|0";
  return key;
}

bool fail(CheckReport& report, const std::vector<Move>& path,
          std::string detail) {
  report.ok = false;
  report.witness = path;
  report.detail = std::move(detail);
  return false;
}

bool equiv_walk(Side l, Side r, Context& ctx, std::vector<Move>& path,
                CheckReport& report) {
  l = expose(l);
  r = expose(r);
  if (!ctx.equiv_seen.insert(pair_key(l, r)).second) return true;
  ++ctx.explored;

  if (r.term->kind == TypeKind::Rec) {
    path.push_back(Move::UnfoldRight);
    if (!equiv_walk(l, {unfold_rec(r.term), r.odd}, ctx, path, report))
      return false;
    path.pop_back();
    return true;
  }
  if (l.term->kind == TypeKind::Rec) {
    path.push_back(Move::UnfoldLeft);
    if (!equiv_walk({unfold_rec(l.term), l.odd}, r, ctx, path, report))
      return false;
    path.pop_back();
    return true;
  }

  Head hl = head_of(l);
  Head hr = head_of(r);
  if (hl != hr) {
    return fail(report, path,
                std::string("heads differ: ") + head_label(hl) + " vs " +
                    head_label(hr));
  }
  if (hl == Head::Inp || hl == Head::Outp) {
    path.push_back(Move::MsgChild);
    if (!equiv_walk({l.term->msg, false}, {r.term->msg, false}, ctx, path,
                    report))
      return false;
    path.pop_back();
    path.push_back(Move::ContChild);
    if (!equiv_walk({l.term->cont, l.odd}, {r.term->cont, r.odd}, ctx, path,
                    report))
      return false;
    path.pop_back();
  }
  return true;
}

bool dual_walk(Side l, Side r, Context& ctx, std::vector<Move>& path,
               CheckReport& report) {
  l = expose(l);
  r = expose(r);
  if (!ctx.dual_seen.insert(pair_key(l, r)).second) return true;
  ++ctx.explored;

  if (r.term->kind == TypeKind::Rec) {
    path.push_back(Move::UnfoldRight);
    if (!dual_walk(l, {unfold_rec(r.term), r.odd}, ctx, path, report))
      return false;
    path.pop_back();
    return true;
  }
  if (l.term->kind == TypeKind::Rec) {
    path.push_back(Move::UnfoldLeft);
    if (!dual_walk({unfold_rec(l.term), l.odd}, r, ctx, path, report))
      return false;
    path.pop_back();
    return true;
  }

  Head hl = head_of(l);
  Head hr = head_of(r);
  if (!opposite(hl, hr)) {
    return fail(report, path,
                std::string("heads are not dual: ") + head_label(hl) +
                    " vs " + head_label(hr));
  }
  if (hl == Head::Inp || hl == Head::Outp) {
    // Message types must be equivalent, not dual.
    path.push_back(Move::MsgChild);
    if (!equiv_walk({l.term->msg, false}, {r.term->msg, false}, ctx, path,
                    report))
      return false;
    path.pop_back();
    path.push_back(Move::ContChild);
    if (!dual_walk({l.term->cont, l.odd}, {r.term->cont, r.odd}, ctx, path,
                   report))
      return false;
    path.pop_back();
  }
  return true;
}

void require_checkable(const TypeRef& t, const char* who) {
  if (!is_closed(t)) throw TypeError(std::string(who) + ": open type");
  if (!is_contractive(t))
    throw TypeError(std::string(who) + ": non-contractive type");
}

}  // namespace

CheckReport check_equiv(const TypeRef& a, const TypeRef& b) {
  require_checkable(a, "check_equiv");
  require_checkable(b, "check_equiv");
  CheckReport report;
  report.ok = true;
  Context ctx;
  std::vector<Move> path;
  equiv_walk({a, false}, {b, false}, ctx, path, report);
  report.pairs_explored = ctx.explored;
  return report;
}

CheckReport check_dual(const TypeRef& a, const TypeRef& b) {
  require_checkable(a, "check_dual");
  require_checkable(b, "check_dual");
  if (a->kind == TypeKind::Int || b->kind == TypeKind::Int)
    throw TypeError("check_dual: int is not a session type");
  CheckReport report;
  report.ok = true;
  Context ctx;
  std::vector<Move> path;
  dual_walk({a, false}, {b, false}, ctx, path, report);
  report.pairs_explored = ctx.explored;
  return report;
}

}  // namespace dualist
