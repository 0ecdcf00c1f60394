#include "grafrepair/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

namespace gr {

PlainRule make_plain_rule(const TypedGraph& lhs, const TypedGraph& interface,
                          const TypedGraph& rhs) {
  PlainRule r{lhs, interface, rhs};
  auto why = validate_rule(rule_without_ac(r));
  if (!why.empty()) throw std::invalid_argument("make_plain_rule: " + why.front());
  return r;
}

Rule make_rule(const PlainRule& plain, CondPtr ac) {
  Rule r{plain, std::move(ac)};
  auto why = validate_rule(r);
  if (!why.empty()) throw std::invalid_argument("make_rule: " + why.front());
  return r;
}

Rule rule_without_ac(const PlainRule& plain) {
  return Rule{plain, make_true(plain.lhs)};
}

PlainRule invert_plain(const PlainRule& r) {
  return PlainRule{r.rhs, r.interface, r.lhs};
}

std::vector<std::string> validate_rule(const Rule& r) {
  std::vector<std::string> why;
  for (const TypedGraph* g : {&r.plain.lhs, &r.plain.interface, &r.plain.rhs})
    for (const auto& w : validate_graph(*g)) why.push_back(w);
  if (!is_subgraph(r.plain.interface, r.plain.lhs))
    why.push_back("interface is not an id-subgraph of the left-hand side");
  if (!is_subgraph(r.plain.interface, r.plain.rhs))
    why.push_back("interface is not an id-subgraph of the right-hand side");
  if (r.ac && !(r.ac->root == r.plain.lhs))
    why.push_back("application condition is not rooted at the left-hand side");
  return why;
}

bool plain_applicable(const PlainRule& r, const Morphism& match) {
  if (!(match.dom == r.lhs)) return false;
  if (!match.is_total() || !match.is_injective()) return false;
  // Dangling condition: a deleted node may not touch edges outside the
  // image of the left-hand side.
  std::set<int> image_edges;
  for (const auto& [le, ge] : match.edge_map) image_edges.insert(ge);
  for (const auto& [v, ty] : r.lhs.nodes) {
    if (r.interface.has_node(v)) continue;
    int gv = match.node_map.at(v);
    for (const auto& [ge, ed] : match.cod.edges)
      if ((ed.src == gv || ed.tar == gv) && !image_edges.count(ge)) return false;
  }
  return true;
}

bool is_applicable(const Rule& r, const Morphism& match) {
  if (!plain_applicable(r.plain, match)) return false;
  return !r.ac || satisfies(match, r.ac);
}

Transformation apply(const Rule& r, const Morphism& match) {
  if (!is_applicable(r, match))
    throw std::invalid_argument("apply: rule is not applicable at this match");
  const TypedGraph& g = match.cod;
  const PlainRule& pr = r.plain;

  Transformation t;
  t.rule = r;
  t.match = match;
  t.before = g;

  // D = G minus the images of deleted elements.
  TypedGraph d = g;
  for (const auto& [le, _] : pr.lhs.edges)
    if (!pr.interface.has_edge(le)) d.edges.erase(match.edge_map.at(le));
  for (const auto& [lv, _] : pr.lhs.nodes)
    if (!pr.interface.has_node(lv)) d.nodes.erase(match.node_map.at(lv));
  t.context = d;

  // H = D plus fresh copies of inserted elements, ids above every id in G.
  TypedGraph h = d;
  int next_node = 0, next_edge = 0;
  for (const auto& [v, _] : g.nodes) next_node = std::max(next_node, v + 1);
  for (const auto& [e, _] : g.edges) next_edge = std::max(next_edge, e + 1);
  Morphism comatch;
  comatch.dom = pr.rhs;
  for (const auto& [rv, ty] : pr.rhs.nodes) {
    if (pr.interface.has_node(rv)) {
      comatch.node_map[rv] = match.node_map.at(rv);
    } else {
      h.nodes[next_node] = ty;
      comatch.node_map[rv] = next_node++;
    }
  }
  for (const auto& [re, ed] : pr.rhs.edges) {
    if (pr.interface.has_edge(re)) {
      comatch.edge_map[re] = match.edge_map.at(re);
    } else {
      h.edges[next_edge] = {comatch.node_map.at(ed.src),
                            comatch.node_map.at(ed.tar), ed.type};
      comatch.edge_map[re] = next_edge++;
    }
  }
  comatch.cod = h;
  t.after = h;
  t.comatch = comatch;

  Morphism track;
  track.dom = g;
  track.cod = h;
  for (const auto& [v, _] : d.nodes) track.node_map[v] = v;
  for (const auto& [e, _] : d.edges) track.edge_map[e] = e;
  t.track = track;
  return t;
}

std::vector<Morphism> matches(const Rule& r, const TypedGraph& host,
                              bool only_applicable) {
  std::vector<Morphism> out;
  for (const auto& m : enumerate_monomorphisms(r.plain.lhs, host))
    if (!only_applicable || is_applicable(r, m)) out.push_back(m);
  return out;
}

Morphism track_compose(const Morphism& t1, const Morphism& t2) {
  if (!(t1.cod == t2.dom))
    throw std::invalid_argument("track_compose: middle graphs differ");
  Morphism t;
  t.dom = t1.dom;
  t.cod = t2.cod;
  for (const auto& [a, b] : t1.node_map) {
    auto it = t2.node_map.find(b);
    if (it != t2.node_map.end()) t.node_map[a] = it->second;
  }
  for (const auto& [a, b] : t1.edge_map) {
    auto it = t2.edge_map.find(b);
    if (it != t2.edge_map.end()) t.edge_map[a] = it->second;
  }
  return t;
}

CondPtr shift_over_rule(const CondPtr& ap, const PlainRule& rho) {
  if (!(ap->root == rho.rhs))
    throw std::invalid_argument("shift_over_rule: condition not rooted at rhs");
  switch (ap->kind) {
    case CKind::True:
      return make_true(rho.lhs);
    case CKind::False:
      return make_false(rho.lhs);
    case CKind::Not:
      return make_not(shift_over_rule(ap->subs[0], rho));
    case CKind::And: {
      std::vector<CondPtr> subs;
      for (const auto& s : ap->subs) subs.push_back(shift_over_rule(s, rho));
      return make_and(rho.lhs, std::move(subs));
    }
    case CKind::Or: {
      std::vector<CondPtr> subs;
      for (const auto& s : ap->subs) subs.push_back(shift_over_rule(s, rho));
      return make_or(rho.lhs, std::move(subs));
    }
    case CKind::Exists:
    case CKind::Forall: {
      // Apply the reversed rule at the anchor; if it cannot be applied the
      // quantified part collapses.
      PlainRule rev = invert_plain(rho);
      if (!plain_applicable(rev, ap->anchor))
        return ap->kind == CKind::Exists ? make_false(rho.lhs)
                                         : make_true(rho.lhs);
      Transformation t = apply(rule_without_ac(rev), ap->anchor);
      PlainRule inner{t.after, t.context, t.before};
      CondPtr sub = shift_over_rule(ap->subs[0], inner);
      return ap->kind == CKind::Exists ? make_exists(t.comatch, std::move(sub))
                                       : make_forall(t.comatch, std::move(sub));
    }
  }
  return make_false(rho.lhs);
}

PlainRule concurrent_rule(const std::vector<Transformation>& steps) {
  if (steps.empty())
    throw std::invalid_argument("concurrent_rule: empty derivation");
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!(steps[i].after == steps[i + 1].before))
      throw std::invalid_argument("concurrent_rule: steps do not chain");
  // Preserved ids survive every step unchanged, so the interface is the id
  // intersection of all contexts.
  TypedGraph k = steps.front().context;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const TypedGraph& d = steps[i].context;
    for (auto it = k.edges.begin(); it != k.edges.end();)
      it = d.has_edge(it->first) ? std::next(it) : k.edges.erase(it);
    for (auto it = k.nodes.begin(); it != k.nodes.end();)
      it = d.has_node(it->first) ? std::next(it) : k.nodes.erase(it);
  }
  return make_plain_rule(steps.front().before, k, steps.back().after);
}

std::vector<Rule> derived_rules(const Rule& rule, const UANF& c, int k) {
  int n = c.nlvl();
  if (k < -1 || k > n - 2 || (k % 2) == 0)
    throw std::out_of_range("derived_rules: k must be odd and in range");
  std::vector<TypedGraph> targets;
  if (k == n - 2)
    targets.push_back(c.graph(k + 2));
  else
    targets = intermediate_graphs(c.graph(k + 2), c.graph(k + 3));
  std::vector<Rule> out;
  for (const auto& p : targets) {
    for (const auto& o : enumerate_overlaps(rule.plain.lhs, p)) {
      if (!plain_applicable(rule.plain, o.left)) continue;
      Transformation t = apply(rule_without_ac(rule.plain), o.left);
      Rule d;
      d.plain = PlainRule{t.before, t.context, t.after};
      d.ac = rule.ac ? shift_over_morphism(rule.ac, o.left) : make_true(t.before);
      out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace gr
