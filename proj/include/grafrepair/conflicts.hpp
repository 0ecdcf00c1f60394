#pragma once

#include <string>
#include <utility>
#include <vector>

#include "grafrepair/consistency.hpp"

namespace gr {

struct RepairingSet;  // defined in repair.hpp

// Directed graph over labelled nodes: layer indices 0..nlvl-1 for a single
// constraint, constraint ids for a set.
struct ConflictGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<int, int>> edges;  // indices into nodes
};

// Does repairing the constraint graph at index a (1-based graph index of c)
// potentially undo satisfaction at index b? One of a, b must be
// existentially bound (even index), the other universally bound (odd).
bool causes_conflict(const UANF& c, int a, int b);

// Same question decided through the basic-maintaining criterion.
bool causes_conflict_basic(const UANF& c, int a, int b);

ConflictGraph conflict_graph(const UANF& c);

bool is_circular_conflict_free(const UANF& c);

// Is there a registered repairing sequence of r (for c) whose concurrent
// rule can destroy or complete an occurrence of a graph of c2?
bool constraint_causes_conflict(const UANF& c, const UANF& c2,
                                const RepairingSet& r);

// Node per constraint, edge per constraint-level conflict. Throws when a
// member is not circular conflict free itself.
ConflictGraph conflict_graph_of_set(const std::vector<UANF>& cs,
                                    const std::vector<RepairingSet>& rs,
                                    const std::vector<std::string>& names = {});

bool is_circular_conflict_free_set(const std::vector<UANF>& cs,
                                   const std::vector<RepairingSet>& rs);

// Kahn's algorithm with deterministic tie-break by node label; on a cyclic
// input `ok` is false and `cycle` holds one witness cycle.
struct TopoResult {
  bool ok = false;
  std::vector<std::string> order;
  std::vector<std::string> cycle;
};

TopoResult topological_ordering(const ConflictGraph& g);

}  // namespace gr
