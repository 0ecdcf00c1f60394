#include "grafrepair/condition.hpp"

#include <algorithm>
#include <stdexcept>

namespace gr {

CondPtr make_true(const TypedGraph& root) {
  auto c = std::make_shared<Cond>();
  c->kind = CKind::True;
  c->root = root;
  return c;
}

CondPtr make_false(const TypedGraph& root) {
  auto c = std::make_shared<Cond>();
  c->kind = CKind::False;
  c->root = root;
  return c;
}

static CondPtr make_quant(CKind k, const Morphism& anchor, CondPtr sub) {
  auto c = std::make_shared<Cond>();
  c->kind = k;
  c->root = anchor.dom;
  c->anchor = anchor;
  c->subs = {std::move(sub)};
  return c;
}

CondPtr make_exists(const Morphism& anchor, CondPtr sub) {
  return make_quant(CKind::Exists, anchor, std::move(sub));
}

CondPtr make_forall(const Morphism& anchor, CondPtr sub) {
  return make_quant(CKind::Forall, anchor, std::move(sub));
}

CondPtr make_not(CondPtr sub) {
  auto c = std::make_shared<Cond>();
  c->kind = CKind::Not;
  c->root = sub->root;
  c->subs = {std::move(sub)};
  return c;
}

CondPtr make_and(const TypedGraph& root, std::vector<CondPtr> subs) {
  if (subs.empty()) return make_true(root);
  if (subs.size() == 1) return subs[0];
  auto c = std::make_shared<Cond>();
  c->kind = CKind::And;
  c->root = root;
  c->subs = std::move(subs);
  return c;
}

CondPtr make_or(const TypedGraph& root, std::vector<CondPtr> subs) {
  if (subs.empty()) return make_false(root);
  if (subs.size() == 1) return subs[0];
  auto c = std::make_shared<Cond>();
  c->kind = CKind::Or;
  c->root = root;
  c->subs = std::move(subs);
  return c;
}

bool cond_equal(const CondPtr& a, const CondPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || !(a->root == b->root)) return false;
  if (a->kind == CKind::Exists || a->kind == CKind::Forall)
    if (!(a->anchor == b->anchor)) return false;
  if (a->subs.size() != b->subs.size()) return false;
  for (std::size_t i = 0; i < a->subs.size(); ++i)
    if (!cond_equal(a->subs[i], b->subs[i])) return false;
  return true;
}

std::size_t cond_size(const CondPtr& c) {
  std::size_t n = 1;
  for (const auto& s : c->subs) n += cond_size(s);
  return n;
}

bool satisfies(const Morphism& p, const CondPtr& c) {
  if (!(p.dom == c->root))
    throw std::invalid_argument("satisfies: morphism domain differs from root graph");
  switch (c->kind) {
    case CKind::True:
      return true;
    case CKind::False:
      return false;
    case CKind::Not:
      return !satisfies(p, c->subs[0]);
    case CKind::And:
      for (const auto& s : c->subs)
        if (!satisfies(p, s)) return false;
      return true;
    case CKind::Or:
      for (const auto& s : c->subs)
        if (satisfies(p, s)) return true;
      return false;
    case CKind::Exists:
    case CKind::Forall: {
      std::map<int, int> fn, fe;
      for (const auto& [x, cx] : c->anchor.node_map) fn[cx] = p.node_map.at(x);
      for (const auto& [x, cx] : c->anchor.edge_map) fe[cx] = p.edge_map.at(x);
      auto qs = enumerate_monomorphisms(c->anchor.cod, p.cod, fn, fe);
      if (c->kind == CKind::Exists) {
        for (const auto& q : qs)
          if (satisfies(q, c->subs[0])) return true;
        return false;
      }
      for (const auto& q : qs)
        if (!satisfies(q, c->subs[0])) return false;
      return true;
    }
  }
  return false;
}

bool graph_satisfies(const TypedGraph& g, const CondPtr& c) {
  if (!c->root.nodes.empty() || !c->root.edges.empty())
    throw std::invalid_argument("graph_satisfies: condition is not a constraint");
  Morphism p = empty_morphism_into(g);
  p.dom = c->root;  // keep the constraint's own (empty) root graph
  return satisfies(p, c);
}

Morphism UANF::inclusion(int k) const {
  return inclusion_morphism(graph(k), graph(k + 1));
}

CondPtr chain_condition(const UANF& c, int from, int to, CondPtr tail) {
  if (from == to) return tail;
  CKind q = c.layer_universal(from) ? CKind::Forall : CKind::Exists;
  return make_quant(q, c.inclusion(from), chain_condition(c, from + 1, to, std::move(tail)));
}

CondPtr uanf_to_condition(const UANF& c) {
  int n = c.nlvl();
  CondPtr tail = c.terminal_true ? make_true(c.graph(n)) : make_false(c.graph(n));
  return chain_condition(c, 0, n, tail);
}

CondPtr subcondition_at_layer(const UANF& c, int k) {
  if (k < -1 || k > c.nlvl())
    throw std::out_of_range("subcondition_at_layer: layer out of range");
  if (k == -1) return make_true(c.graph(0));
  int n = c.nlvl();
  CondPtr tail = c.terminal_true ? make_true(c.graph(n)) : make_false(c.graph(n));
  return chain_condition(c, k, n, tail);
}

CondPtr replace_from_layer(const UANF& c, int k, CondPtr e) {
  if (k < 0 || k > c.nlvl())
    throw std::out_of_range("replace_from_layer: layer out of range");
  if (!(e->root == c.graph(k)))
    throw std::invalid_argument("replace_from_layer: replacement root mismatch");
  return chain_condition(c, 0, k, std::move(e));
}

CondPtr truncate_after_layer(const UANF& c, int k) {
  if (k < -1) throw std::out_of_range("truncate_after_layer: layer out of range");
  if (k == -1) return make_true(c.graph(0));
  if (k >= c.nlvl() - 1) k = c.nlvl() - 1;
  CondPtr tail = c.layer_universal(k) ? make_false(c.graph(k + 1))
                                      : make_true(c.graph(k + 1));
  return chain_condition(c, 0, k + 1, std::move(tail));
}

bool satisfies_up_to_layer(const Morphism& p, const UANF& c, int k) {
  return satisfies(p, truncate_after_layer(c, k));
}

bool graph_satisfies_up_to_layer(const TypedGraph& g, const UANF& c, int k) {
  return graph_satisfies(g, truncate_after_layer(c, k));
}

int kmax(const TypedGraph& g, const UANF& c) {
  int n = c.nlvl();
  if (graph_satisfies(g, uanf_to_condition(c))) return n - 1;
  int last = -1;
  for (int i = -1; i <= n - 1; i += 2) {
    if (!graph_satisfies_up_to_layer(g, c, i)) return last;
    last = i;
  }
  return last;
}

CondPtr intermediate_condition(const UANF& c, int k, const TypedGraph& cp) {
  if (k < 0 || k >= c.nlvl() || k % 2 == 0)
    throw std::out_of_range("intermediate_condition: layer must be odd and in range");
  if (!is_subgraph(c.graph(k), cp) || !is_subgraph(cp, c.graph(k + 1)) ||
      cp == c.graph(k))
    throw std::invalid_argument("intermediate_condition: cp is not intermediate");
  Morphism a = inclusion_morphism(c.graph(k), cp);
  return replace_from_layer(c, k, make_exists(a, make_true(cp)));
}

CondPtr shift_over_morphism(const CondPtr& c, const Morphism& i) {
  if (!(i.dom == c->root))
    throw std::invalid_argument("shift_over_morphism: root mismatch");
  switch (c->kind) {
    case CKind::True:
      return make_true(i.cod);
    case CKind::False:
      return make_false(i.cod);
    case CKind::Not:
      return make_not(shift_over_morphism(c->subs[0], i));
    case CKind::And: {
      std::vector<CondPtr> subs;
      for (const auto& s : c->subs) subs.push_back(shift_over_morphism(s, i));
      return make_and(i.cod, std::move(subs));
    }
    case CKind::Or: {
      std::vector<CondPtr> subs;
      for (const auto& s : c->subs) subs.push_back(shift_over_morphism(s, i));
      return make_or(i.cod, std::move(subs));
    }
    case CKind::Exists:
    case CKind::Forall: {
      // Jointly surjective commuting pairs (a', i') of i.cod and anchor.cod;
      // the identification of i(x) with anchor(x) is forced by commutation
      // and the empty identification (disjoint union) is allowed.
      std::map<int, int> bn, be;
      for (const auto& [x, ix] : i.node_map) bn[ix] = c->anchor.node_map.at(x);
      for (const auto& [x, ix] : i.edge_map) be[ix] = c->anchor.edge_map.at(x);
      auto family = enumerate_overlaps_seeded(i.cod, c->anchor.cod, bn, be, false);
      std::vector<CondPtr> parts;
      for (const auto& o : family) {
        CondPtr inner = shift_over_morphism(c->subs[0], o.right);
        if (c->kind == CKind::Exists)
          parts.push_back(make_exists(o.left, std::move(inner)));
        else
          parts.push_back(make_forall(o.left, std::move(inner)));
      }
      return c->kind == CKind::Exists ? make_or(i.cod, std::move(parts))
                                      : make_and(i.cod, std::move(parts));
    }
  }
  return make_false(i.cod);
}

namespace {

struct ChainLevel {
  bool universal;
  Morphism anchor;
};

struct ParsedChain {
  TypedGraph root;
  std::vector<ChainLevel> levels;
  bool leaf_true;
};

ParsedChain parse_chain(const CondPtr& c) {
  ParsedChain pc;
  pc.root = c->root;
  const Cond* cur = c.get();
  while (true) {
    switch (cur->kind) {
      case CKind::True:
        pc.leaf_true = true;
        return pc;
      case CKind::False:
        pc.leaf_true = false;
        return pc;
      case CKind::Exists:
      case CKind::Forall:
        if (!cur->anchor.is_total() || !cur->anchor.is_injective())
          throw std::invalid_argument("to_uanf: anchor is not total injective");
        pc.levels.push_back({cur->kind == CKind::Forall, cur->anchor});
        cur = cur->subs[0].get();
        break;
      default:
        throw std::invalid_argument("to_uanf: input is not an alternating chain");
    }
  }
}

bool bijective(const Morphism& a) {
  return a.node_map.size() == a.cod.nodes.size() &&
         a.edge_map.size() == a.cod.edges.size() && a.is_total() &&
         a.is_injective();
}

// Ending rewrites, same-quantifier merges and bijective-anchor elimination,
// iterated to a fixed point. Each rule shortens the chain.
void normalize_chain(ParsedChain& pc) {
  bool changed = true;
  while (changed) {
    changed = false;
    // Endings: Exists(C, false) -> false, Forall(C, true) -> true.
    if (!pc.levels.empty()) {
      const ChainLevel& last = pc.levels.back();
      if ((last.universal && pc.leaf_true) || (!last.universal && !pc.leaf_true)) {
        pc.levels.pop_back();
        changed = true;
        continue;
      }
    }
    // Adjacent equal quantifiers merge by composing anchors.
    for (std::size_t i = 0; i + 1 < pc.levels.size(); ++i) {
      if (pc.levels[i].universal == pc.levels[i + 1].universal) {
        pc.levels[i].anchor = compose(pc.levels[i].anchor, pc.levels[i + 1].anchor);
        pc.levels[i].anchor.cod = pc.levels[i + 1].anchor.cod;
        pc.levels.erase(pc.levels.begin() + static_cast<long>(i) + 1);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    // Bijective anchors at position >= 1 are trivial binders.
    for (std::size_t i = 1; i < pc.levels.size(); ++i) {
      if (!bijective(pc.levels[i].anchor)) continue;
      if (i + 1 < pc.levels.size()) {
        Morphism merged = compose(pc.levels[i].anchor, pc.levels[i + 1].anchor);
        merged.cod = pc.levels[i + 1].anchor.cod;
        pc.levels[i + 1] = {pc.levels[i + 1].universal, merged};
        pc.levels.erase(pc.levels.begin() + static_cast<long>(i));
      } else {
        // Q(bijection, leaf) == leaf.
        pc.levels.pop_back();
      }
      changed = true;
      break;
    }
  }
}

}  // namespace

UANF to_uanf(const CondPtr& c) {
  ParsedChain pc = parse_chain(c);
  normalize_chain(pc);
  // Leading existential binder is wrapped under a trivial universal one.
  if (!pc.levels.empty() && !pc.levels[0].universal)
    pc.levels.insert(pc.levels.begin(), {true, identity_morphism(pc.root)});
  for (std::size_t i = 0; i + 1 < pc.levels.size(); ++i)
    if (pc.levels[i].universal == pc.levels[i + 1].universal)
      throw std::invalid_argument("to_uanf: quantifiers do not alternate");
  if (!pc.levels.empty()) {
    bool last_universal = pc.levels.back().universal;
    if (last_universal == pc.leaf_true)
      throw std::invalid_argument("to_uanf: ending does not match quantifier");
  }

  // Renumber the chain into id-inclusion form.
  UANF u;
  u.terminal_true = pc.leaf_true;
  TypedGraph cur;
  cur.tg = pc.root.tg;
  Morphism relabel;  // original C_i -> renumbered C_i
  relabel.dom = pc.root;
  int next_node = 0, next_edge = 0;
  for (const auto& [v, ty] : pc.root.nodes) cur.nodes[next_node] = ty, relabel.node_map[v] = next_node++;
  for (const auto& [e, ed] : pc.root.edges) {
    cur.edges[next_edge] = {relabel.node_map.at(ed.src), relabel.node_map.at(ed.tar), ed.type};
    relabel.edge_map[e] = next_edge++;
  }
  relabel.cod = cur;
  u.graphs.push_back(cur);
  for (const auto& lvl : pc.levels) {
    const TypedGraph& ci1 = lvl.anchor.cod;
    Morphism next_relabel;
    next_relabel.dom = ci1;
    TypedGraph g = cur;
    // Elements hit by the anchor keep their renumbered ids; new ones are fresh.
    std::map<int, int> anchored_nodes, anchored_edges;  // C_{i+1} id -> new id
    for (const auto& [y, z] : lvl.anchor.node_map)
      anchored_nodes[z] = relabel.node_map.at(y);
    for (const auto& [y, z] : lvl.anchor.edge_map)
      anchored_edges[z] = relabel.edge_map.at(y);
    for (const auto& [z, ty] : ci1.nodes) {
      auto it = anchored_nodes.find(z);
      if (it != anchored_nodes.end()) {
        next_relabel.node_map[z] = it->second;
      } else {
        g.nodes[next_node] = ty;
        next_relabel.node_map[z] = next_node++;
      }
    }
    for (const auto& [z, ed] : ci1.edges) {
      auto it = anchored_edges.find(z);
      if (it != anchored_edges.end()) {
        next_relabel.edge_map[z] = it->second;
      } else {
        g.edges[next_edge] = {next_relabel.node_map.at(ed.src),
                              next_relabel.node_map.at(ed.tar), ed.type};
        next_relabel.edge_map[z] = next_edge++;
      }
    }
    next_relabel.cod = g;
    u.graphs.push_back(g);
    cur = g;
    relabel = next_relabel;
  }
  // Sanity: quantifier parity must match position (C_1 universally bound).
  for (std::size_t i = 0; i < pc.levels.size(); ++i)
    if (pc.levels[i].universal != (i % 2 == 0))
      throw std::invalid_argument("to_uanf: quantifier alternation broken");
  return u;
}

CondPtr cut0_of_subcondition(const UANF& c, int m) {
  int n = c.nlvl();
  if (m < 0 || m > n) throw std::out_of_range("cut0_of_subcondition: out of range");
  if (m == n)
    return c.terminal_true ? make_true(c.graph(n)) : make_false(c.graph(n));
  if (c.layer_universal(m))
    return make_forall(c.inclusion(m), make_false(c.graph(m + 1)));
  return make_exists(c.inclusion(m), make_true(c.graph(m + 1)));
}

ExtInt number_of_violations(const TypedGraph& g, const UANF& c, int j) {
  int n = c.nlvl();
  int km = kmax(g, c);
  if (j < km + 1) return ExtInt::of(0);
  if (km == n - 1) return ExtInt::of(0);  // consistent graph, no violations
  if (j > km + 1) return ExtInt::inf();
  // j == km + 1
  const TypedGraph& ck2 = c.graph(km + 2);
  bool e_false = (km + 2 == n) && !c.terminal_true;
  bool e_true = (km + 2 == n) && c.terminal_true;
  auto occs = enumerate_monomorphisms(ck2, g);
  if (e_true) return ExtInt::of(0);  // degenerate; cannot arise for km odd
  if (e_false) return ExtInt::of(static_cast<long long>(occs.size()));
  long long total = 0;
  for (const auto& cp : intermediate_graphs(ck2, c.graph(km + 3))) {
    CondPtr wit = make_exists(inclusion_morphism(ck2, cp), make_true(cp));
    for (const auto& q : occs)
      if (!satisfies(q, wit)) ++total;
  }
  return ExtInt::of(total);
}

std::vector<Morphism> potentially_increasing_occurrences(const TypedGraph& g,
                                                         const UANF& c, int k) {
  int n = c.nlvl();
  if (k < -1 || k > n - 2 || (k % 2) == 0)
    throw std::out_of_range("potentially_increasing_occurrences: k must be odd");
  const TypedGraph& ck2 = c.graph(k + 2);
  CondPtr viol = cut0_of_subcondition(c, k + 2);
  std::vector<Morphism> out;
  for (const auto& p : enumerate_monomorphisms(ck2, g)) {
    if (satisfies(p, viol)) continue;
    bool ok = true;
    for (int i = 0; i <= k && ok; ++i) {
      // Restriction of p to C_{i+1} must satisfy the subcondition at layer
      // i+1 of the truncated condition (whose tail at C_{k+1} is true).
      Morphism pr;
      pr.dom = c.graph(i + 1);
      pr.cod = g;
      for (const auto& [v, _] : pr.dom.nodes) pr.node_map[v] = p.node_map.at(v);
      for (const auto& [e, _] : pr.dom.edges) pr.edge_map[e] = p.edge_map.at(e);
      CondPtr sc = chain_condition(c, i + 1, k + 1, make_true(c.graph(k + 1)));
      if (!satisfies(pr, sc)) ok = false;
    }
    if (ok) out.push_back(p);
  }
  return out;
}

}  // namespace gr
