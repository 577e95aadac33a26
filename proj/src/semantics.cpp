#include "dualist/semantics.hpp"

#include <deque>
#include <set>

#include "json.hpp"

namespace dualist {

const char* move_name(Move m) {
  switch (m) {
    case Move::UnfoldLeft: return "unfold-left";
    case Move::UnfoldRight: return "unfold-right";
    case Move::MsgChild: return "msg-child";
    case Move::ContChild: return "cont-child";
  }
  return "?";
}

const char* head_name(HeadKind k) {
  switch (k) {
    case HeadKind::End: return "end";
    case HeadKind::Int: return "int";
    case HeadKind::In: return "in";
    case HeadKind::Out: return "out";
  }
  return "?";
}

Parity flipped(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

std::string state_key(const SemState& s) {
  std::string key = canon_key(s.term);
  key += s.parity == Parity::Even ? "|0" : "|1";
  return key;
}

SemState tree_of(const TypeRef& t) {
  if (!is_closed(t)) throw TypeError("tree_of: open type");
  if (!is_contractive(t)) throw TypeError("tree_of: non-contractive type");
  return {t, Parity::Even};
}

SemState dual_tree(const SemState& s) { return {s.term, flipped(s.parity)}; }

HeadForm head_normal(const SemState& s, std::size_t* rewrite_steps) {
  TypeRef term = s.term;
  Parity parity = s.parity;
  std::size_t steps = 0;
  // Contractivity bounds the rewrites between constructors; the cap is a
  // bug signal, not a semantic limit.
  constexpr std::size_t kMaxRewrites = 1u << 20;
  for (;;) {
    switch (term->kind) {
      case TypeKind::Rec:
        term = unfold_rec(term);
        ++steps;
        break;
      case TypeKind::Flip:
        parity = flipped(parity);
        term = term->cont;
        ++steps;
        break;
      case TypeKind::End:
        if (rewrite_steps) *rewrite_steps = steps;
        return {HeadKind::End, std::nullopt, std::nullopt};
      case TypeKind::Int:
        if (rewrite_steps) *rewrite_steps = steps;
        return {HeadKind::Int, std::nullopt, std::nullopt};
      case TypeKind::In:
      case TypeKind::Out: {
        if (rewrite_steps) *rewrite_steps = steps;
        const bool is_in = term->kind == TypeKind::In;
        const bool swap = parity == Parity::Odd;
        HeadKind kind = (is_in != swap) ? HeadKind::In : HeadKind::Out;
        // Off-spine subtrees are unchanged by duality: messages restart even.
        return {kind, SemState{term->msg, Parity::Even},
                SemState{term->cont, parity}};
      }
      case TypeKind::Var:
      case TypeKind::NegVar:
        throw TypeError("head_normal: open term in semantic state");
    }
    if (steps > kMaxRewrites)
      throw TypeError("head_normal: rewrite budget exceeded");
  }
}

namespace {

struct EqContext {
  std::set<std::string> visited;
  std::size_t explored = 0;
};

bool equal_walk(const SemState& a, const SemState& b, EqContext& ctx,
                std::vector<Move>& path, CheckReport& report) {
  std::string key = state_key(a);
  key += '\x1f';
  key += state_key(b);
  if (!ctx.visited.insert(std::move(key)).second) return true;
  ++ctx.explored;

  HeadForm ha = head_normal(a);
  HeadForm hb = head_normal(b);
  if (ha.kind != hb.kind) {
    report.ok = false;
    report.witness = path;
    report.detail =
        std::string("heads differ: ") + head_name(ha.kind) + " vs " + head_name(hb.kind);
    return false;
  }
  if (ha.kind == HeadKind::In || ha.kind == HeadKind::Out) {
    path.push_back(Move::MsgChild);
    if (!equal_walk(*ha.msg, *hb.msg, ctx, path, report)) return false;
    path.pop_back();
    path.push_back(Move::ContChild);
    if (!equal_walk(*ha.cont, *hb.cont, ctx, path, report)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace

CheckReport tree_equal(const SemState& a, const SemState& b) {
  CheckReport report;
  report.ok = true;
  EqContext ctx;
  std::vector<Move> path;
  equal_walk(a, b, ctx, path, report);
  report.pairs_explored = ctx.explored;
  return report;
}

CheckReport tree_dual(const SemState& a, const SemState& b) {
  return tree_equal(dual_tree(a), b);
}

std::vector<SemState> reachable_states(const SemState& s) {
  std::vector<SemState> out;
  std::set<std::string> seen;
  std::deque<SemState> queue{s};
  constexpr std::size_t kMaxStates = 100000;  // finiteness bug signal
  while (!queue.empty()) {
    SemState cur = queue.front();
    queue.pop_front();
    if (!seen.insert(state_key(cur)).second) continue;
    out.push_back(cur);
    if (out.size() > kMaxStates)
      throw TypeError("reachable_states: state budget exceeded");
    HeadForm h = head_normal(cur);
    if (h.msg) queue.push_back(*h.msg);
    if (h.cont) queue.push_back(*h.cont);
  }
  return out;
}

RenderNode unfold_to_depth(const SemState& s, int depth) {
  RenderNode node;
  if (depth <= 0) {
    node.hole = true;
    return node;
  }
  HeadForm h = head_normal(s);
  switch (h.kind) {
    case HeadKind::End: node.label = "end"; break;
    case HeadKind::Int: node.label = "int"; break;
    case HeadKind::In: node.label = "?"; break;
    case HeadKind::Out: node.label = "!"; break;
  }
  if (h.msg) {
    node.msg = std::make_unique<RenderNode>(unfold_to_depth(*h.msg, depth - 1));
    node.cont = std::make_unique<RenderNode>(unfold_to_depth(*h.cont, depth - 1));
  }
  return node;
}

namespace {

void render_text_into(const RenderNode& n, const std::string& indent,
                      std::string& out) {
  if (n.hole) {
    out += "...";
    out += '\n';
    return;
  }
  out += n.label;
  out += '\n';
  if (n.msg) {
    out += indent;
    out += "  msg: ";
    render_text_into(*n.msg, indent + "  ", out);
    out += indent;
    out += "  cont: ";
    render_text_into(*n.cont, indent + "  ", out);
  }
}

nlohmann::json render_json_value(const RenderNode& n) {
  if (n.hole) return nlohmann::json{{"hole", true}};
  nlohmann::json j{{"label", n.label}, {"hole", false}};
  if (n.msg) {
    j["msg"] = render_json_value(*n.msg);
    j["cont"] = render_json_value(*n.cont);
  }
  return j;
}

}  // namespace

std::string render_text(const RenderNode& n) {
  std::string out;
  render_text_into(n, "", out);
  return out;
}

std::string render_json(const RenderNode& n) {
  return render_json_value(n).dump();
}

}  // namespace dualist
