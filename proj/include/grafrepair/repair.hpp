#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grafrepair/conflicts.hpp"
#include "grafrepair/rewrite.hpp"

namespace gr {

struct RepairingStep {
  PlainRule rule;
  Morphism match;  // into the current chain graph
};

// A derivation starting at C_{k-1} (existential target) or C_k (universal
// target) whose concurrent rule repairs one occurrence.
struct RepairingSequence {
  enum class Kind { Existential, Universal };
  int target = 0;  // graph index k of the constraint
  Kind kind = Kind::Existential;
  std::vector<RepairingStep> steps;
  PlainRule concurrent;  // cached; lhs is the anchor graph
};

struct RepairingSet {
  std::vector<PlainRule> rules;
  std::map<int, RepairingSequence> sequences;  // keyed by target index
};

struct ValidationResult {
  bool ok = false;
  std::vector<std::string> reasons;
};

ValidationResult validate_repairing_sequence(const RepairingSequence& seq,
                                             const UANF& c, int k);

ValidationResult validate_repairing_set(const RepairingSet& r, const UANF& c);

ValidationResult validate_for_set(const std::vector<RepairingSet>& rs,
                                  const std::vector<UANF>& cs);

// Single-element insertion chains for existential graphs and an edge
// deletion step for a trailing universal graph, assembled and validated.
RepairingSet construct_repairing_set(const UANF& c);

// One application of the cached concurrent rule at occurrence p.
Transformation apply_sequence_at(const RepairingSequence& seq,
                                 const Morphism& p, const TypedGraph& g);

struct TraceEntry {
  int iteration = 0;
  bool inner = false;
  int layer = 0;            // kmax of the outer iteration / j of an inner step
  std::string occurrence;   // key of the chosen occurrence
  int branch = 0;           // chosen r
  int sequence_target = 0;  // k of the applied sequence
  std::vector<std::string> nv;  // nv(j) snapshot after the step, j = -1..nlvl-1
};

struct RepairTrace {
  std::uint64_t seed = 0;
  std::vector<TraceEntry> entries;
};

// Terminating repair of one circular-conflict-free constraint.
std::pair<TypedGraph, RepairTrace> repair_one(const TypedGraph& g,
                                              const UANF& c,
                                              const RepairingSet& r,
                                              std::uint64_t seed,
                                              int max_iterations = 100000);

// Repair of a circular-conflict-free set in topological order.
std::pair<TypedGraph, RepairTrace> repair_set(
    const TypedGraph& g, const std::vector<UANF>& cs,
    const std::vector<RepairingSet>& rs, std::uint64_t seed,
    int max_iterations = 100000,
    const std::vector<std::string>& names = {});

}  // namespace gr
