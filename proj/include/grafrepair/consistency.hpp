#pragma once

#include <optional>

#include "grafrepair/condition.hpp"
#include "grafrepair/rewrite.hpp"

namespace gr {

// The ten consistency notions for a single transformation w.r.t. a
// constraint in UANF.
struct ConsistencyVerdict {
  bool preserving = false;
  bool guaranteeing = false;
  bool maintaining = false;
  bool increasing = false;
  bool direct_maintaining = false;
  bool direct_increasing = false;
  bool sustaining = false;
  bool improving = false;
  bool direct_sustaining = false;
  bool direct_improving = false;
};

bool is_preserving(const Transformation& t, const UANF& c);
bool is_guaranteeing(const Transformation& t, const UANF& c);
bool is_maintaining(const Transformation& t, const UANF& c);
bool is_increasing(const Transformation& t, const UANF& c);
bool is_direct_maintaining(const Transformation& t, const UANF& c);
bool is_direct_increasing(const Transformation& t, const UANF& c);
bool is_sustaining(const Transformation& t, const UANF& c);
bool is_improving(const Transformation& t, const UANF& c);
bool is_direct_sustaining(const Transformation& t, const UANF& c);
bool is_direct_improving(const Transformation& t, const UANF& c);

ConsistencyVerdict classify_transformation(const Transformation& t,
                                           const UANF& c);

// Syntactic sufficient criterion for a plain rule to be maintaining at
// layer k (k odd, -1 <= k <= nlvl-2): no overlap destroys a universal
// witness, no overlap inserts a universal occurrence up to layer k+2, and
// (below the top layer) no overlap touches the new part of C_{k+3}.
bool is_basic_maintaining_at_layer(const PlainRule& rho, const UANF& c, int k);

// Syntactic classification of basic increasing rules at layer k.
struct BasicClassification {
  enum class Kind { NotBasic, Deleting, Inserting };
  Kind kind = Kind::NotBasic;
  int layer = -1;                         // the k it was computed for
  std::optional<Morphism> occurrence;     // p: C_{k+2} -> L
  std::optional<TypedGraph> target;       // C' for the inserting case
};

BasicClassification classify_basic_increasing(const PlainRule& rho,
                                              const UANF& c, int k);

// Three-valued verdict for "every application of this rule at layer k is
// maintaining": a syntactic proof, an explicit counterexample found by
// exhaustive search over hosts up to `bound` nodes, or exhaustion of that
// search space without a counterexample.
struct RuleVerdict {
  enum class Kind { Proved, Counterexample, FuzzPass };
  Kind kind = Kind::FuzzPass;
  std::optional<Transformation> counterexample;
  int tested = 0;  // transformations examined by the search
};

RuleVerdict is_rule_maintaining_at_layer(const Rule& rule, const UANF& c,
                                         int k, int bound);

}  // namespace gr
