#include "grafrepair/acsynth.hpp"

#include <set>
#include <stdexcept>

namespace gr {

namespace {

struct NewPart {
  std::set<int> nodes, edges;
};

NewPart minus(const TypedGraph& big, const TypedGraph& small) {
  NewPart d;
  for (const auto& [v, _] : big.nodes)
    if (!small.has_node(v)) d.nodes.insert(v);
  for (const auto& [e, _] : big.edges)
    if (!small.has_edge(e)) d.edges.insert(e);
  return d;
}

bool images_intersect(const Morphism& l, const NewPart& a, const Morphism& r,
                      const NewPart& b) {
  std::set<int> ln, le;
  for (int v : a.nodes) ln.insert(l.node_map.at(v));
  for (int e : a.edges) le.insert(l.edge_map.at(e));
  for (int v : b.nodes)
    if (ln.count(r.node_map.at(v))) return true;
  for (int e : b.edges)
    if (le.count(r.edge_map.at(e))) return true;
  return false;
}

// Conjunction that drops true conjuncts and collapses on false.
CondPtr conj(const TypedGraph& root, std::vector<CondPtr> parts) {
  std::vector<CondPtr> kept;
  for (auto& p : parts) {
    if (!p || p->kind == CKind::True) continue;
    if (p->kind == CKind::False) return make_false(root);
    kept.push_back(std::move(p));
  }
  return make_and(root, std::move(kept));
}

void check_k(const UANF& c, int k, const char* who, bool require_odd = true) {
  if (k < -1 || k >= c.nlvl() || (require_odd && k % 2 == 0))
    throw std::out_of_range(std::string(who) + ": bad layer");
}

Morphism compose_track(const Morphism& p, const Morphism& track) {
  Morphism r;
  r.dom = p.dom;
  r.cod = track.cod;
  for (const auto& [x, gx] : p.node_map) {
    auto it = track.node_map.find(gx);
    if (it != track.node_map.end()) r.node_map[x] = it->second;
  }
  for (const auto& [x, gx] : p.edge_map) {
    auto it = track.edge_map.find(gx);
    if (it != track.edge_map.end()) r.edge_map[x] = it->second;
  }
  return r;
}

}  // namespace

CondPtr no_violation_inserted(const PlainRule& rho, const UANF& c, int k) {
  check_k(c, k, "no_violation_inserted");
  if (k >= c.nlvl() - 2) return make_true(rho.lhs);
  NewPart del = minus(rho.lhs, rho.interface);
  std::vector<CondPtr> parts;
  const TypedGraph& ck2 = c.graph(k + 2);
  for (const auto& cp : intermediate_graphs(ck2, c.graph(k + 3))) {
    NewPart fresh = minus(cp, ck2);
    for (const auto& o : enumerate_overlaps(rho.lhs, cp))
      if (images_intersect(o.left, del, o.right, fresh))
        parts.push_back(make_not(make_exists(o.left, make_true(o.graph))));
  }
  return conj(rho.lhs, std::move(parts));
}

CondPtr no_universally_inserted(const PlainRule& rho, const UANF& c, int k) {
  check_k(c, k, "no_universally_inserted", false);
  NewPart ins = minus(rho.rhs, rho.interface);
  std::vector<CondPtr> parts;
  int top = std::min(k + 2, c.nlvl());
  for (int j = 1; j <= top; j += 2) {
    NewPart fresh = minus(c.graph(j), c.graph(j - 1));
    for (const auto& o : enumerate_overlaps(rho.rhs, c.graph(j)))
      if (images_intersect(o.left, ins, o.right, fresh))
        parts.push_back(shift_over_rule(
            make_not(make_exists(o.left, make_true(o.graph))), rho));
  }
  return conj(rho.lhs, std::move(parts));
}

CondPtr no_existentially_destroyed(const PlainRule& rho, const UANF& c, int k) {
  check_k(c, k, "no_existentially_destroyed");
  if (k == -1) return make_true(rho.lhs);
  NewPart del = minus(rho.lhs, rho.interface);
  std::vector<CondPtr> parts;
  for (int j = 2; j <= k + 1; j += 2) {
    NewPart fresh = minus(c.graph(j), c.graph(j - 1));
    for (const auto& o : enumerate_overlaps(rho.lhs, c.graph(j)))
      if (images_intersect(o.left, del, o.right, fresh))
        parts.push_back(make_not(make_exists(o.left, make_true(o.graph))));
  }
  return conj(rho.lhs, std::move(parts));
}

Rule maintaining_ac_at_layer(const Rule& rule, const UANF& c, int k) {
  Rule out = rule;
  out.ac = conj(rule.plain.lhs,
                {rule.ac, no_existentially_destroyed(rule.plain, c, k),
                 no_universally_inserted(rule.plain, c, k),
                 no_violation_inserted(rule.plain, c, k)});
  return out;
}

Rule maintaining_ac(const Rule& rule, const UANF& c) {
  std::vector<CondPtr> parts{rule.ac};
  for (int i = -1; i <= c.nlvl() - 2; i += 2)
    parts.push_back(no_violation_inserted(rule.plain, c, i));
  parts.push_back(no_universally_inserted(rule.plain, c, c.nlvl() - 1));
  Rule out = rule;
  out.ac = conj(rule.plain.lhs, std::move(parts));
  return out;
}

Rule increasing_ac_at_layer(const Rule& rule, const UANF& c, int k,
                            const TypedGraph& cp) {
  check_k(c, k, "increasing_ac_at_layer");
  if (k > c.nlvl() - 2)
    throw std::out_of_range("increasing_ac_at_layer: k above top layer");
  int n = c.nlvl();
  const PlainRule& rho = rule.plain;
  const TypedGraph& l = rho.lhs;
  const TypedGraph& ck2 = c.graph(k + 2);
  bool top = (k == n - 2);
  if (top) {
    if (!(cp == ck2))
      throw std::invalid_argument("increasing_ac_at_layer: cp must be C_{k+2}");
  } else {
    if (!is_subgraph(ck2, cp) || !is_subgraph(cp, c.graph(k + 3)) || cp == ck2)
      throw std::invalid_argument("increasing_ac_at_layer: cp not intermediate");
  }
  NewPart del = minus(l, rho.interface);
  NewPart fresh_ck2 = minus(ck2, c.graph(k + 1));
  Morphism a_r;
  if (!top) a_r = inclusion_morphism(ck2, cp);

  std::vector<CondPtr> disjuncts;
  for (const auto& o : enumerate_overlaps(l, ck2)) {
    // "Violation exists": the occurrence reached through this overlap does
    // not already have a witness towards cp.
    CondPtr nex;
    if (top) {
      nex = make_exists(o.left, make_true(o.graph));
    } else {
      std::vector<CondPtr> inner;
      for (const auto& q : extended_overlaps(o.graph, o.right, a_r))
        inner.push_back(make_not(make_exists(q.left, make_true(q.graph))));
      nex = make_exists(o.left, conj(o.graph, std::move(inner)));
    }
    // "Violation removed": the application must remove that violation.
    CondPtr rep;
    if (images_intersect(o.left, del, o.right, fresh_ck2)) {
      rep = make_true(l);
    } else if (top) {
      continue;  // rep is false for this overlap
    } else {
      PlainRule rev = invert_plain(rho);
      for (const auto& op : enumerate_overlaps(rho.rhs, ck2)) {
        if (!plain_applicable(rev, op.left)) continue;
        Transformation t = apply(rule_without_ac(rev), op.left);
        // Reverse application must reproduce the overlap graph o, matching
        // both the comatch and the tracked occurrence of C_{k+2}.
        if (t.after.nodes.size() != o.graph.nodes.size() ||
            t.after.edges.size() != o.graph.edges.size())
          continue;
        Morphism tr = compose_track(op.right, t.track);
        if (!tr.is_total()) continue;
        std::map<int, int> fn, fe;
        bool clash = false;
        auto force = [&clash](std::map<int, int>& m, int a, int b) {
          auto it = m.find(a);
          if (it != m.end() && it->second != b) clash = true;
          m[a] = b;
        };
        for (const auto& [x, y] : t.comatch.node_map)
          force(fn, y, o.left.node_map.at(x));
        for (const auto& [x, y] : t.comatch.edge_map)
          force(fe, y, o.left.edge_map.at(x));
        for (const auto& [x, y] : tr.node_map)
          force(fn, y, o.right.node_map.at(x));
        for (const auto& [x, y] : tr.edge_map)
          force(fe, y, o.right.edge_map.at(x));
        if (clash) continue;
        if (enumerate_monomorphisms(t.after, o.graph, fn, fe).empty()) continue;
        std::vector<CondPtr> inner;
        for (const auto& q : extended_overlaps(op.graph, op.right, a_r))
          inner.push_back(make_exists(q.left, make_true(q.graph)));
        rep = shift_over_rule(make_forall(op.left, make_or(op.graph, std::move(inner))),
                              rho);
        break;
      }
      if (!rep) continue;  // no reverse construction: rep is false
    }
    if (rep->kind == CKind::True)
      disjuncts.push_back(std::move(nex));
    else
      disjuncts.push_back(conj(l, {std::move(nex), std::move(rep)}));
  }
  Rule out = rule;
  Rule main = maintaining_ac_at_layer(rule, c, k);
  out.ac = conj(l, {main.ac, make_or(l, std::move(disjuncts))});
  return out;
}

Rule basic_ac(const Rule& rule, const BasicClassification& classification,
              const UANF& c, int j) {
  if (classification.kind == BasicClassification::Kind::NotBasic)
    throw std::invalid_argument("basic_ac: rule is not basic increasing");
  int k = classification.layer;
  int n = c.nlvl();
  const TypedGraph& l = rule.plain.lhs;
  CondPtr apb;
  if (k == n - 2) {
    apb = make_true(l);
  } else if (j == k) {
    const TypedGraph& ck2 = c.graph(k + 2);
    const TypedGraph& target =
        classification.kind == BasicClassification::Kind::Deleting
            ? c.graph(k + 3)
            : *classification.target;
    Morphism a = inclusion_morphism(ck2, target);
    const Morphism& occ = *classification.occurrence;  // C_{k+2} -> L
    std::vector<CondPtr> parts;
    for (const auto& q : extended_overlaps(l, occ, a))
      parts.push_back(make_not(make_exists(q.left, make_true(q.graph))));
    apb = conj(l, std::move(parts));
  } else {
    apb = make_false(l);
  }
  Rule out = rule;
  out.ac = conj(l, {rule.ac, std::move(apb)});
  return out;
}

}  // namespace gr
