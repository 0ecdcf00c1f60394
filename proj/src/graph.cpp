#include "grafrepair/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gr {

TypeGraphPtr toy_type_graph() {
  static TypeGraphPtr tg = [] {
    auto t = std::make_shared<TypeGraph>();
    t->node_types = {"Class", "Feature"};
    t->edge_types["owns"] = {"Class", "Feature"};
    t->edge_types["dep"] = {"Feature", "Feature"};
    return t;
  }();
  return tg;
}

int TypedGraph::max_id() const {
  int m = -1;
  if (!nodes.empty()) m = std::max(m, nodes.rbegin()->first);
  if (!edges.empty()) m = std::max(m, edges.rbegin()->first);
  return m;
}

TypedGraph empty_graph(TypeGraphPtr tg) {
  TypedGraph g;
  g.tg = std::move(tg);
  return g;
}

bool Morphism::is_total() const {
  for (const auto& [v, _] : dom.nodes)
    if (!node_map.count(v)) return false;
  for (const auto& [e, _] : dom.edges)
    if (!edge_map.count(e)) return false;
  return true;
}

bool Morphism::is_injective() const {
  std::set<int> seen;
  for (const auto& [_, w] : node_map)
    if (!seen.insert(w).second) return false;
  seen.clear();
  for (const auto& [_, f] : edge_map)
    if (!seen.insert(f).second) return false;
  return true;
}

std::optional<int> Morphism::node_image(int v) const {
  auto it = node_map.find(v);
  if (it == node_map.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Morphism::edge_image(int e) const {
  auto it = edge_map.find(e);
  if (it == edge_map.end()) return std::nullopt;
  return it->second;
}

Morphism identity_morphism(const TypedGraph& g) {
  Morphism m;
  m.dom = g;
  m.cod = g;
  for (const auto& [v, _] : g.nodes) m.node_map[v] = v;
  for (const auto& [e, _] : g.edges) m.edge_map[e] = e;
  return m;
}

Morphism inclusion_morphism(const TypedGraph& sub, const TypedGraph& super) {
  Morphism m;
  m.dom = sub;
  m.cod = super;
  for (const auto& [v, _] : sub.nodes) m.node_map[v] = v;
  for (const auto& [e, _] : sub.edges) m.edge_map[e] = e;
  return m;
}

Morphism empty_morphism_into(const TypedGraph& g) {
  Morphism m;
  m.dom = empty_graph(g.tg);
  m.cod = g;
  return m;
}

Morphism compose(const Morphism& f, const Morphism& g) {
  Morphism h;
  h.dom = f.dom;
  h.cod = g.cod;
  for (const auto& [v, w] : f.node_map) {
    auto it = g.node_map.find(w);
    if (it != g.node_map.end()) h.node_map[v] = it->second;
  }
  for (const auto& [e, e2] : f.edge_map) {
    auto it = g.edge_map.find(e2);
    if (it != g.edge_map.end()) h.edge_map[e] = it->second;
  }
  return h;
}

bool validate_morphism(const Morphism& f, std::vector<std::string>* why) {
  bool ok = true;
  auto complain = [&](const std::string& s) {
    ok = false;
    if (why) why->push_back(s);
  };
  for (const auto& [v, w] : f.node_map) {
    if (!f.dom.has_node(v) || !f.cod.has_node(w)) {
      complain("node map references missing node");
      continue;
    }
    if (f.dom.nodes.at(v) != f.cod.nodes.at(w))
      complain("node map does not preserve node type");
  }
  for (const auto& [e, e2] : f.edge_map) {
    if (!f.dom.has_edge(e) || !f.cod.has_edge(e2)) {
      complain("edge map references missing edge");
      continue;
    }
    const Edge& a = f.dom.edges.at(e);
    const Edge& b = f.cod.edges.at(e2);
    if (a.type != b.type) complain("edge map does not preserve edge type");
    auto s = f.node_map.find(a.src);
    auto t = f.node_map.find(a.tar);
    if (s == f.node_map.end() || t == f.node_map.end())
      complain("edge mapped but an endpoint is not");
    else if (s->second != b.src || t->second != b.tar)
      complain("edge map does not preserve src/tar");
  }
  return ok;
}

std::vector<std::string> validate_graph(const TypedGraph& g) {
  std::vector<std::string> out;
  if (!g.tg) {
    out.push_back("graph has no type graph");
    return out;
  }
  for (const auto& [v, ty] : g.nodes)
    if (!g.tg->node_types.count(ty))
      out.push_back("node " + std::to_string(v) + ": unknown node type '" + ty + "'");
  for (const auto& [e, ed] : g.edges) {
    auto et = g.tg->edge_types.find(ed.type);
    if (et == g.tg->edge_types.end()) {
      out.push_back("edge " + std::to_string(e) + ": unknown edge type '" + ed.type + "'");
      continue;
    }
    if (!g.has_node(ed.src))
      out.push_back("edge " + std::to_string(e) + ": dangling source node " +
                    std::to_string(ed.src));
    else if (g.nodes.at(ed.src) != et->second.src)
      out.push_back("edge " + std::to_string(e) + ": source type mismatch");
    if (!g.has_node(ed.tar))
      out.push_back("edge " + std::to_string(e) + ": dangling target node " +
                    std::to_string(ed.tar));
    else if (g.nodes.at(ed.tar) != et->second.tar)
      out.push_back("edge " + std::to_string(e) + ": target type mismatch");
  }
  return out;
}

bool is_subgraph(const TypedGraph& sub, const TypedGraph& g) {
  for (const auto& [v, ty] : sub.nodes) {
    auto it = g.nodes.find(v);
    if (it == g.nodes.end() || it->second != ty) return false;
  }
  for (const auto& [e, ed] : sub.edges) {
    auto it = g.edges.find(e);
    if (it == g.edges.end() || !(it->second == ed)) return false;
  }
  return true;
}

namespace {

// Backtracking search over pattern nodes (ascending id), then pattern
// edges (ascending id); candidates tried ascending, so the result order is
// lexicographic on the mapped ids.
struct MonoSearch {
  const TypedGraph& pat;
  const TypedGraph& host;
  std::vector<int> pat_nodes, pat_edges;
  std::map<int, int> nmap, emap;
  std::set<int> used_nodes, used_edges;
  std::vector<Morphism> out;

  MonoSearch(const TypedGraph& p, const TypedGraph& h) : pat(p), host(h) {
    for (const auto& [v, _] : p.nodes) pat_nodes.push_back(v);
    for (const auto& [e, _] : p.edges) pat_edges.push_back(e);
  }

  bool seed(const std::map<int, int>& fn, const std::map<int, int>& fe) {
    for (const auto& [v, w] : fn) {
      if (!pat.has_node(v) || !host.has_node(w)) return false;
      if (pat.nodes.at(v) != host.nodes.at(w)) return false;
      auto it = nmap.find(v);
      if (it != nmap.end()) {
        if (it->second != w) return false;
        continue;
      }
      if (!used_nodes.insert(w).second) return false;
      nmap[v] = w;
    }
    for (const auto& [e, f] : fe) {
      if (!pat.has_edge(e) || !host.has_edge(f)) return false;
      auto it = emap.find(e);
      if (it != emap.end()) {
        if (it->second != f) return false;
        continue;
      }
      if (!used_edges.insert(f).second) return false;
      emap[e] = f;
    }
    return true;
  }

  void run_nodes(std::size_t i) {
    if (i == pat_nodes.size()) {
      run_edges(0);
      return;
    }
    int v = pat_nodes[i];
    if (nmap.count(v)) {
      run_nodes(i + 1);
      return;
    }
    const std::string& ty = pat.nodes.at(v);
    for (const auto& [w, wty] : host.nodes) {
      if (wty != ty || used_nodes.count(w)) continue;
      nmap[v] = w;
      used_nodes.insert(w);
      run_nodes(i + 1);
      used_nodes.erase(w);
      nmap.erase(v);
    }
  }

  void run_edges(std::size_t i) {
    if (i == pat_edges.size()) {
      Morphism m;
      m.dom = pat;
      m.cod = host;
      m.node_map = nmap;
      m.edge_map = emap;
      out.push_back(std::move(m));
      return;
    }
    int e = pat_edges[i];
    const Edge& pe = pat.edges.at(e);
    if (emap.count(e)) {
      const Edge& he = host.edges.at(emap.at(e));
      if (he.type == pe.type && he.src == nmap.at(pe.src) &&
          he.tar == nmap.at(pe.tar))
        run_edges(i + 1);
      return;
    }
    for (const auto& [f, he] : host.edges) {
      if (used_edges.count(f)) continue;
      if (he.type != pe.type) continue;
      if (he.src != nmap.at(pe.src) || he.tar != nmap.at(pe.tar)) continue;
      emap[e] = f;
      used_edges.insert(f);
      run_edges(i + 1);
      used_edges.erase(f);
      emap.erase(e);
    }
  }
};

}  // namespace

std::vector<Morphism> enumerate_monomorphisms(const TypedGraph& pattern,
                                              const TypedGraph& host,
                                              const std::map<int, int>& forced_nodes,
                                              const std::map<int, int>& forced_edges) {
  if (pattern.tg && host.tg && pattern.tg != host.tg)
    throw std::invalid_argument("enumerate_monomorphisms: type graph mismatch");
  MonoSearch s(pattern, host);
  if (!s.seed(forced_nodes, forced_edges)) return {};
  s.run_nodes(0);
  return std::move(s.out);
}

bool graph_isomorphic(const TypedGraph& g, const TypedGraph& h) {
  if (g.nodes.size() != h.nodes.size() || g.edges.size() != h.edges.size())
    return false;
  return !enumerate_monomorphisms(g, h).empty();
}

std::vector<TypedGraph> intermediate_graphs(const TypedGraph& lo,
                                            const TypedGraph& hi) {
  if (!is_subgraph(lo, hi))
    throw std::invalid_argument("intermediate_graphs: lo is not a subgraph of hi");
  std::vector<int> extra_nodes, extra_edges;
  for (const auto& [v, _] : hi.nodes)
    if (!lo.has_node(v)) extra_nodes.push_back(v);
  for (const auto& [e, _] : hi.edges)
    if (!lo.has_edge(e)) extra_edges.push_back(e);

  std::vector<TypedGraph> out;
  const std::size_t nn = extra_nodes.size(), ne = extra_edges.size();
  for (std::size_t nmask = 0; nmask < (1u << nn); ++nmask) {
    TypedGraph x = lo;
    x.tg = hi.tg;
    for (std::size_t i = 0; i < nn; ++i)
      if (nmask & (1u << i)) x.nodes[extra_nodes[i]] = hi.nodes.at(extra_nodes[i]);
    for (std::size_t emask = 0; emask < (1u << ne); ++emask) {
      if (nmask == 0 && emask == 0) continue;  // X must properly extend lo
      TypedGraph y = x;
      bool ok = true;
      for (std::size_t i = 0; i < ne && ok; ++i) {
        if (!(emask & (1u << i))) continue;
        const Edge& ed = hi.edges.at(extra_edges[i]);
        if (!y.has_node(ed.src) || !y.has_node(ed.tar)) ok = false;
        else y.edges[extra_edges[i]] = ed;
      }
      if (ok) out.push_back(std::move(y));
    }
  }
  std::sort(out.begin(), out.end(), [](const TypedGraph& a, const TypedGraph& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return graph_key(a) < graph_key(b);
  });
  return out;
}

namespace {

// Enumerates partial injective type-compatible identifications between g1
// and g2 (node pairs plus edge pairs whose endpoints are identified) that
// extend the given seed, and builds one overlap graph per identification.
// Each identification is exactly one isomorphism class of spans.
struct OverlapSearch {
  const TypedGraph& g1;
  const TypedGraph& g2;
  std::vector<int> n1, e1;
  std::map<int, int> nid, eid;  // g1 id -> g2 id
  std::set<int> used_n2, used_e2;
  std::vector<Overlap> out;

  OverlapSearch(const TypedGraph& a, const TypedGraph& b) : g1(a), g2(b) {
    for (const auto& [v, _] : a.nodes) n1.push_back(v);
    for (const auto& [e, _] : a.edges) e1.push_back(e);
  }

  bool seed(const std::map<int, int>& bn, const std::map<int, int>& be) {
    for (const auto& [v, w] : bn) {
      if (!g1.has_node(v) || !g2.has_node(w)) return false;
      if (g1.nodes.at(v) != g2.nodes.at(w)) return false;
      auto it = nid.find(v);
      if (it != nid.end()) {
        if (it->second != w) return false;
        continue;
      }
      if (!used_n2.insert(w).second) return false;
      nid[v] = w;
    }
    for (const auto& [e, f] : be) {
      if (!g1.has_edge(e) || !g2.has_edge(f)) return false;
      auto it = eid.find(e);
      if (it != eid.end()) {
        if (it->second != f) return false;
        continue;
      }
      if (!used_e2.insert(f).second) return false;
      eid[e] = f;
    }
    return true;
  }

  void run_nodes(std::size_t i) {
    if (i == n1.size()) {
      run_edges(0);
      return;
    }
    int v = n1[i];
    if (nid.count(v)) {
      run_nodes(i + 1);
      return;
    }
    run_nodes(i + 1);  // v stays unidentified
    const std::string& ty = g1.nodes.at(v);
    for (const auto& [w, wty] : g2.nodes) {
      if (wty != ty || used_n2.count(w)) continue;
      nid[v] = w;
      used_n2.insert(w);
      run_nodes(i + 1);
      used_n2.erase(w);
      nid.erase(v);
    }
  }

  void run_edges(std::size_t i) {
    if (i == e1.size()) {
      emit();
      return;
    }
    int e = e1[i];
    if (eid.count(e)) {
      run_edges(i + 1);
      return;
    }
    run_edges(i + 1);  // e stays unidentified
    const Edge& ea = g1.edges.at(e);
    auto s = nid.find(ea.src);
    auto t = nid.find(ea.tar);
    if (s == nid.end() || t == nid.end()) return;
    for (const auto& [f, eb] : g2.edges) {
      if (used_e2.count(f)) continue;
      if (eb.type != ea.type || eb.src != s->second || eb.tar != t->second) continue;
      eid[e] = f;
      used_e2.insert(f);
      run_edges(i + 1);
      used_e2.erase(f);
      eid.erase(e);
    }
  }

  void emit() {
    // Consistency: an identified edge's seed endpoints must be identified
    // consistently (guaranteed by construction except for seeded edges).
    for (const auto& [e, f] : eid) {
      const Edge& ea = g1.edges.at(e);
      const Edge& eb = g2.edges.at(f);
      auto s = nid.find(ea.src);
      auto t = nid.find(ea.tar);
      if (s == nid.end() || t == nid.end()) return;
      if (s->second != eb.src || t->second != eb.tar) return;
      if (ea.type != eb.type) return;
    }
    Overlap o;
    o.graph.tg = g1.tg ? g1.tg : g2.tg;
    o.left.dom = g1;
    o.right.dom = g2;
    int next = 0;
    std::map<int, int> n2_to_p, e2_to_p;
    for (const auto& [v, ty] : g1.nodes) {
      o.graph.nodes[next] = ty;
      o.left.node_map[v] = next;
      auto it = nid.find(v);
      if (it != nid.end()) n2_to_p[it->second] = next;
      ++next;
    }
    for (const auto& [w, ty] : g2.nodes) {
      if (n2_to_p.count(w)) continue;
      o.graph.nodes[next] = ty;
      n2_to_p[w] = next;
      ++next;
    }
    int enext = 0;
    for (const auto& [e, ed] : g1.edges) {
      o.graph.edges[enext] = {o.left.node_map.at(ed.src),
                              o.left.node_map.at(ed.tar), ed.type};
      o.left.edge_map[e] = enext;
      auto it = eid.find(e);
      if (it != eid.end()) e2_to_p[it->second] = enext;
      ++enext;
    }
    for (const auto& [f, ed] : g2.edges) {
      if (e2_to_p.count(f)) continue;
      o.graph.edges[enext] = {n2_to_p.at(ed.src), n2_to_p.at(ed.tar), ed.type};
      e2_to_p[f] = enext;
      ++enext;
    }
    for (const auto& [w, _] : g2.nodes) o.right.node_map[w] = n2_to_p.at(w);
    for (const auto& [f, _] : g2.edges) o.right.edge_map[f] = e2_to_p.at(f);
    o.left.cod = o.graph;
    o.right.cod = o.graph;
    out.push_back(std::move(o));
  }
};

}  // namespace

std::vector<Overlap> enumerate_overlaps_seeded(const TypedGraph& g1,
                                               const TypedGraph& g2,
                                               const std::map<int, int>& base_nodes,
                                               const std::map<int, int>& base_edges,
                                               bool require_nonempty) {
  OverlapSearch s(g1, g2);
  if (!s.seed(base_nodes, base_edges)) return {};
  s.run_nodes(0);
  if (require_nonempty) {
    std::vector<Overlap> filtered;
    for (auto& o : s.out) {
      std::size_t covered = o.graph.size();
      if (g1.size() + g2.size() > covered) filtered.push_back(std::move(o));
    }
    return filtered;
  }
  return std::move(s.out);
}

std::vector<Overlap> enumerate_overlaps(const TypedGraph& g1,
                                        const TypedGraph& g2) {
  return enumerate_overlaps_seeded(g1, g2, {}, {}, true);
}

std::optional<Morphism> restrict_morphism(const Morphism& f,
                                          const TypedGraph& sub_dom,
                                          const TypedGraph& sub_cod) {
  if (!is_subgraph(sub_dom, f.dom) || !is_subgraph(sub_cod, f.cod))
    throw std::invalid_argument("restrict_morphism: inputs are not subgraphs");
  Morphism r;
  r.dom = sub_dom;
  r.cod = sub_cod;
  for (const auto& [v, _] : sub_dom.nodes) {
    auto it = f.node_map.find(v);
    if (it == f.node_map.end()) continue;
    if (!sub_cod.has_node(it->second)) return std::nullopt;
    r.node_map[v] = it->second;
  }
  for (const auto& [e, _] : sub_dom.edges) {
    auto it = f.edge_map.find(e);
    if (it == f.edge_map.end()) continue;
    if (!sub_cod.has_edge(it->second)) return std::nullopt;
    r.edge_map[e] = it->second;
  }
  return r;
}

std::vector<Overlap> extended_overlaps(const TypedGraph& g,
                                       const Morphism& anchor,
                                       const Morphism& e) {
  if (!(anchor.dom == e.dom))
    throw std::invalid_argument("extended_overlaps: anchor/e domain mismatch");
  std::map<int, int> bn, be;
  for (const auto& [x, gx] : anchor.node_map) {
    auto it = e.node_map.find(x);
    if (it == e.node_map.end())
      throw std::invalid_argument("extended_overlaps: e is not total");
    bn[gx] = it->second;
  }
  for (const auto& [x, gx] : anchor.edge_map) {
    auto it = e.edge_map.find(x);
    if (it == e.edge_map.end())
      throw std::invalid_argument("extended_overlaps: e is not total");
    be[gx] = it->second;
  }
  (void)g;
  return enumerate_overlaps_seeded(anchor.cod, e.cod, bn, be, true);
}

std::vector<TypedGraph> enumerate_hosts(const TypeGraphPtr& tg, int max_nodes) {
  std::vector<std::string> ntypes(tg->node_types.begin(), tg->node_types.end());
  std::vector<std::pair<std::string, EdgeType>> etypes(tg->edge_types.begin(),
                                                       tg->edge_types.end());
  std::vector<TypedGraph> out;
  for (int m = 0; m <= max_nodes; ++m) {
    if (m > 0 && ntypes.empty()) break;
    std::vector<std::size_t> lab(static_cast<std::size_t>(m), 0);
    while (true) {
      TypedGraph base;
      base.tg = tg;
      for (int v = 0; v < m; ++v) base.nodes[v] = ntypes[lab[static_cast<std::size_t>(v)]];
      std::vector<Edge> cands;
      for (const auto& [ty, et] : etypes)
        for (int s = 0; s < m; ++s)
          for (int t = 0; t < m; ++t)
            if (base.nodes[s] == et.src && base.nodes[t] == et.tar)
              cands.push_back({s, t, ty});
      if (cands.size() > 24)
        throw std::invalid_argument("enumerate_hosts: bound too large");
      for (std::uint64_t mask = 0; mask < (1ull << cands.size()); ++mask) {
        TypedGraph g = base;
        int eid = 0;
        for (std::size_t i = 0; i < cands.size(); ++i)
          if (mask & (1ull << i)) g.edges[eid++] = cands[i];
        out.push_back(std::move(g));
      }
      // next labeling
      int i = m - 1;
      while (i >= 0 && lab[static_cast<std::size_t>(i)] + 1 == ntypes.size())
        lab[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++lab[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

std::string graph_key(const TypedGraph& g) {
  std::ostringstream os;
  os << "N";
  for (const auto& [v, ty] : g.nodes) os << v << ":" << ty << ";";
  os << "E";
  for (const auto& [e, ed] : g.edges)
    os << e << ":" << ed.type << ":" << ed.src << ">" << ed.tar << ";";
  return os.str();
}

}  // namespace gr
