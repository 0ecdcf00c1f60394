#pragma once
// Finite typed graphs, morphisms and the combinatorial enumerations
// (monomorphisms, overlaps, intermediate graphs, restrictions) used by
// the rest of the library.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gr {

struct EdgeType {
  std::string src;
  std::string tar;
};

// Fixed type graph: node type names plus edge types with typed endpoints.
struct TypeGraph {
  std::set<std::string> node_types;
  std::map<std::string, EdgeType> edge_types;
};

using TypeGraphPtr = std::shared_ptr<const TypeGraph>;

// The toy type graph used by fixtures and the CLI default:
// Class, Feature; owns: Class->Feature, dep: Feature->Feature.
TypeGraphPtr toy_type_graph();

struct Edge {
  int src = 0;
  int tar = 0;
  std::string type;

  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

// A finite graph typed over `tg`; the typing morphism is implicit in the
// node/edge type labels. Node and edge ids are opaque integers.
struct TypedGraph {
  TypeGraphPtr tg;
  std::map<int, std::string> nodes;  // node id -> node type
  std::map<int, Edge> edges;         // edge id -> edge

  bool has_node(int id) const { return nodes.count(id) > 0; }
  bool has_edge(int id) const { return edges.count(id) > 0; }
  std::size_t size() const { return nodes.size() + edges.size(); }
  int max_id() const;

  bool operator==(const TypedGraph& o) const {
    return nodes == o.nodes && edges == o.edges;
  }
};

TypedGraph empty_graph(TypeGraphPtr tg);

// Structure- and type-preserving map between typed graphs. May be partial
// (track morphisms); injectivity/totality are queryable, not stored flags.
struct Morphism {
  TypedGraph dom;
  TypedGraph cod;
  std::map<int, int> node_map;
  std::map<int, int> edge_map;

  bool is_total() const;
  bool is_injective() const;
  std::optional<int> node_image(int v) const;
  std::optional<int> edge_image(int e) const;

  bool operator==(const Morphism& o) const {
    return dom == o.dom && cod == o.cod && node_map == o.node_map &&
           edge_map == o.edge_map;
  }
};

// Identity morphism and id-inclusion of an id-subgraph into a supergraph.
Morphism identity_morphism(const TypedGraph& g);
Morphism inclusion_morphism(const TypedGraph& sub, const TypedGraph& super);
// Empty morphism from the empty graph into g.
Morphism empty_morphism_into(const TypedGraph& g);

// f;g composition (dom f -> cod g), defined where both legs are defined.
Morphism compose(const Morphism& f, const Morphism& g);

// Checks src/tar/type preservation on the domain of definition.
bool validate_morphism(const Morphism& f, std::vector<std::string>* why = nullptr);

// Every invariant violation of g (dangling endpoints, type mismatches,
// unknown types). Violations are data, not faults.
std::vector<std::string> validate_graph(const TypedGraph& g);

// true iff sub is an id-subgraph of g (same labels, same edges).
bool is_subgraph(const TypedGraph& sub, const TypedGraph& g);

// All total injective type-preserving morphisms pattern -> host in a
// deterministic (lexicographic on mapped ids) order. `forced_nodes` /
// `forced_edges` pre-assign part of the map (used for anchored extension
// and commuting-square searches); enumeration keeps only extensions.
std::vector<Morphism> enumerate_monomorphisms(
    const TypedGraph& pattern, const TypedGraph& host,
    const std::map<int, int>& forced_nodes = {},
    const std::map<int, int>& forced_edges = {});

bool graph_isomorphic(const TypedGraph& g, const TypedGraph& h);

// ig(lo, hi): all well-formed X with lo as proper id-subgraph, X id-subgraph
// of hi; includes hi itself, excludes lo. Sorted by (size, node ids, edge ids).
std::vector<TypedGraph> intermediate_graphs(const TypedGraph& lo,
                                            const TypedGraph& hi);

// Jointly surjective pair of injective morphisms into a common graph.
struct Overlap {
  TypedGraph graph;
  Morphism left;   // g1 -> graph
  Morphism right;  // g2 -> graph
};

// One representative per isomorphism class of jointly-surjective injective
// pairs with non-empty image intersection.
std::vector<Overlap> enumerate_overlaps(const TypedGraph& g1,
                                        const TypedGraph& g2);

// Same, but seeded with a forced identification (g1 element -> g2 element)
// and optionally allowing the empty identification (disjoint union). Used
// for commuting-square families (shift over morphism, extended overlaps).
std::vector<Overlap> enumerate_overlaps_seeded(
    const TypedGraph& g1, const TypedGraph& g2,
    const std::map<int, int>& base_nodes, const std::map<int, int>& base_edges,
    bool require_nonempty);

// The unique restriction of f to (sub_dom, sub_cod) when f(sub_dom) lies in
// sub_cod; nullopt otherwise.
std::optional<Morphism> restrict_morphism(const Morphism& f,
                                          const TypedGraph& sub_dom,
                                          const TypedGraph& sub_cod);

// eol(g, anchor, e): overlaps P of g and cod(e) whose square with anchor and
// e commutes: i_g^P . anchor = i_H^P . e.
std::vector<Overlap> extended_overlaps(const TypedGraph& g,
                                       const Morphism& anchor,
                                       const Morphism& e);

// Deterministic structural key (ids included); equal graphs -> equal keys.
std::string graph_key(const TypedGraph& g);

// All well-formed graphs over tg with at most max_nodes nodes and at most
// one edge per (type, src, tar) triple; ids are 0..n-1. Deterministic order.
std::vector<TypedGraph> enumerate_hosts(const TypeGraphPtr& tg, int max_nodes);

}  // namespace gr
