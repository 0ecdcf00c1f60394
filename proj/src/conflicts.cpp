#include "grafrepair/conflicts.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "grafrepair/repair.hpp"

namespace gr {

namespace {

void check_pair(const UANF& c, int a, int b) {
  int n = c.nlvl();
  if (a < 1 || a > n || b < 1 || b > n || a == b)
    throw std::out_of_range("causes_conflict: graph index out of range");
  if (a % 2 == b % 2)
    throw std::invalid_argument(
        "causes_conflict: one index must be existential, the other universal");
}

// Deletion candidates for the universal graph C_j: every intermediate
// graph between C_{j-1} and C_j plus C_{j-1} itself (without the latter no
// full-deletion rule and no chain anchor exists).
std::vector<TypedGraph> deletion_interfaces(const UANF& c, int j) {
  std::vector<TypedGraph> out;
  out.push_back(c.graph(j - 1));
  for (auto& g : intermediate_graphs(c.graph(j - 1), c.graph(j)))
    if (!(g == c.graph(j))) out.push_back(std::move(g));
  // The identity interface (C = C_j) is a valid candidate as well.
  out.push_back(c.graph(j));
  return out;
}

UANF universal_singleton(const TypedGraph& g) {
  UANF u;
  u.terminal_true = false;
  u.graphs.push_back(empty_graph(g.tg));
  u.graphs.push_back(g);
  return u;
}

UANF existential_singleton(const TypedGraph& g) {
  UANF u;
  u.terminal_true = true;
  u.graphs.push_back(empty_graph(g.tg));
  u.graphs.push_back(empty_graph(g.tg));
  u.graphs.push_back(g);
  return u;
}

}  // namespace

bool causes_conflict(const UANF& c, int a, int b) {
  check_pair(c, a, b);
  if (a % 2 == 0) {
    // Existential C_a conflicts universal C_b: inserting the new part of
    // C_a can complete an occurrence of C_b.
    int k = a;
    PlainRule del{c.graph(k), c.graph(k - 1), c.graph(k - 1)};
    std::set<int> fresh_nodes, fresh_edges;
    for (const auto& [v, _] : c.graph(k).nodes)
      if (!c.graph(k - 1).has_node(v)) fresh_nodes.insert(v);
    for (const auto& [e, _] : c.graph(k).edges)
      if (!c.graph(k - 1).has_edge(e)) fresh_edges.insert(e);
    for (const auto& o : enumerate_overlaps(c.graph(k), c.graph(b))) {
      bool touches = false;
      for (int v : fresh_nodes)
        for (const auto& [x, px] : o.right.node_map)
          if (px == o.left.node_map.at(v)) touches = true;
      for (int e : fresh_edges)
        for (const auto& [x, px] : o.right.edge_map)
          if (px == o.left.edge_map.at(e)) touches = true;
      if (touches && plain_applicable(del, o.left)) return true;
    }
    return false;
  }
  // Universal C_a conflicts existential C_b: deleting parts of C_a can
  // destroy an occurrence of C_b.
  int j = a;
  std::set<int> fresh_nodes, fresh_edges;
  for (const auto& [v, _] : c.graph(j).nodes)
    if (!c.graph(j - 1).has_node(v)) fresh_nodes.insert(v);
  for (const auto& [e, _] : c.graph(j).edges)
    if (!c.graph(j - 1).has_edge(e)) fresh_edges.insert(e);
  for (const auto& o : enumerate_overlaps(c.graph(j), c.graph(b))) {
    bool touches = false;
    for (int v : fresh_nodes)
      for (const auto& [x, px] : o.right.node_map)
        if (px == o.left.node_map.at(v)) touches = true;
    for (int e : fresh_edges)
      for (const auto& [x, px] : o.right.edge_map)
        if (px == o.left.edge_map.at(e)) touches = true;
    if (!touches) continue;
    for (const auto& iface : deletion_interfaces(c, j)) {
      PlainRule del{c.graph(j), iface, iface};
      if (plain_applicable(del, o.left)) return true;
    }
  }
  return false;
}

bool causes_conflict_basic(const UANF& c, int a, int b) {
  check_pair(c, a, b);
  if (a % 2 == 0) {
    PlainRule ins{c.graph(a - 1), c.graph(a - 1), c.graph(a)};
    return !is_basic_maintaining_at_layer(ins, universal_singleton(c.graph(b)),
                                          -1);
  }
  for (const auto& iface : deletion_interfaces(c, a)) {
    PlainRule del{c.graph(a), iface, iface};
    if (!is_basic_maintaining_at_layer(del, existential_singleton(c.graph(b)),
                                       -1))
      return true;
  }
  return false;
}

ConflictGraph conflict_graph(const UANF& c) {
  int n = c.nlvl();
  ConflictGraph g;
  for (int i = 0; i < n; ++i) g.nodes.push_back(std::to_string(i));
  std::set<std::pair<int, int>> edges;
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      if (a == b || a % 2 == b % 2) continue;
      if (!causes_conflict(c, a, b)) continue;
      for (int ap : {a, a - 1}) {
        if (ap < 0 || ap > n - 1) continue;
        for (int bp : {b, b - 1}) {
          if (bp < 0 || bp > n - 1 || ap == bp) continue;
          edges.insert({ap, bp});
        }
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

bool is_circular_conflict_free(const UANF& c) {
  return topological_ordering(conflict_graph(c)).ok;
}

bool constraint_causes_conflict(const UANF& c, const UANF& c2,
                                const RepairingSet& r) {
  (void)c;
  for (const auto& [k, seq] : r.sequences) {
    for (int j = 1; j <= c2.nlvl(); ++j) {
      UANF single = (j % 2 == 1) ? universal_singleton(c2.graph(j))
                                 : existential_singleton(c2.graph(j));
      if (!is_basic_maintaining_at_layer(seq.concurrent, single, -1))
        return true;
    }
  }
  return false;
}

ConflictGraph conflict_graph_of_set(const std::vector<UANF>& cs,
                                    const std::vector<RepairingSet>& rs,
                                    const std::vector<std::string>& names) {
  if (cs.size() != rs.size())
    throw std::invalid_argument("conflict_graph_of_set: size mismatch");
  ConflictGraph g;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!is_circular_conflict_free(cs[i]))
      throw std::invalid_argument(
          "conflict_graph_of_set: member constraint " + std::to_string(i) +
          " is not circular conflict free");
    g.nodes.push_back(i < names.size() ? names[i] : "c" + std::to_string(i));
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (i != j && constraint_causes_conflict(cs[i], cs[j], rs[i]))
        g.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
  return g;
}

bool is_circular_conflict_free_set(const std::vector<UANF>& cs,
                                   const std::vector<RepairingSet>& rs) {
  return topological_ordering(conflict_graph_of_set(cs, rs)).ok;
}

TopoResult topological_ordering(const ConflictGraph& g) {
  TopoResult r;
  int n = static_cast<int>(g.nodes.size());
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (const auto& [s, t] : g.edges) {
    if (s < 0 || s >= n || t < 0 || t >= n)
      throw std::out_of_range("topological_ordering: edge endpoint");
    out[static_cast<std::size_t>(s)].push_back(t);
    ++indeg[static_cast<std::size_t>(t)];
  }
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int taken = 0; taken < n; ++taken) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)] || indeg[static_cast<std::size_t>(v)] != 0)
        continue;
      if (best == -1 || g.nodes[static_cast<std::size_t>(v)] <
                            g.nodes[static_cast<std::size_t>(best)])
        best = v;
    }
    if (best == -1) {
      // Cycle among the remaining nodes: every remaining node has an
      // incoming edge from a remaining node, so walk predecessors until a
      // node repeats.
      int v = 0;
      while (done[static_cast<std::size_t>(v)]) ++v;
      std::vector<int> path;
      std::set<int> seen;
      while (!seen.count(v)) {
        seen.insert(v);
        path.push_back(v);
        for (const auto& [s, t] : g.edges) {
          if (t == v && !done[static_cast<std::size_t>(s)]) {
            v = s;
            break;
          }
        }
      }
      auto it = std::find(path.begin(), path.end(), v);
      std::vector<int> cyc(it, path.end());
      std::reverse(cyc.begin(), cyc.end());
      for (int w : cyc) r.cycle.push_back(g.nodes[static_cast<std::size_t>(w)]);
      r.ok = false;
      return r;
    }
    done[static_cast<std::size_t>(best)] = true;
    r.order.push_back(g.nodes[static_cast<std::size_t>(best)]);
    for (int w : out[static_cast<std::size_t>(best)])
      --indeg[static_cast<std::size_t>(w)];
  }
  r.ok = true;
  return r;
}

}  // namespace gr
