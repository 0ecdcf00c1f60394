#pragma once

#include <map>
#include <optional>
#include <string>

#include "grafrepair/consistency.hpp"

namespace gr {

// Part 1: forbids matches whose deletions would create a new violation of
// the next existential layer. True when k >= nlvl-2.
CondPtr no_violation_inserted(const PlainRule& rho, const UANF& c, int k);

// Part 2: forbids matches whose insertions would complete a universally
// bound occurrence up to layer k+2 (built on rhs overlaps, shifted back).
CondPtr no_universally_inserted(const PlainRule& rho, const UANF& c, int k);

// Part 3: forbids matches whose deletions would destroy an existentially
// bound occurrence up to layer k+1. True when k = -1.
CondPtr no_existentially_destroyed(const PlainRule& rho, const UANF& c, int k);

// The rule guarded so that its applications are direct-maintaining at
// layer k: ac ∧ remain_k ∧ ins_k ∧ wors_k.
Rule maintaining_ac_at_layer(const Rule& rule, const UANF& c, int k);

// The rule guarded so that its applications are direct-maintaining at
// every layer: ac ∧ (wors_i for all odd i) ∧ ins_{nlvl-1}.
Rule maintaining_ac(const Rule& rule, const UANF& c);

// The rule guarded so that its applications are direct-increasing at layer
// k with designated target graph cp (cp in ig(C_{k+2},C_{k+3}) below the
// top layer, cp = C_{k+2} at the top layer).
Rule increasing_ac_at_layer(const Rule& rule, const UANF& c, int k,
                            const TypedGraph& cp);

// Application condition for a basic increasing rule: ac ∧ apb_j.
Rule basic_ac(const Rule& rule, const BasicClassification& classification,
              const UANF& c, int j);

struct SynthesisReport {
  std::string rule_id;
  std::string constraint_id;
  int layer = -1;
  std::optional<TypedGraph> cp;
  CondPtr produced;
  std::map<std::string, int> overlap_counts;
  std::size_t condition_size = 0;
};

}  // namespace gr
