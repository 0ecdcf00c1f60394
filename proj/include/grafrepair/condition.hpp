#pragma once
// Nested graph conditions: AST, satisfaction semantics, normalization to the
// universally quantified alternating form, layer operators, truncation,
// satisfaction up to layer, the largest-satisfied-layer scan, intermediate
// conditions, shift over morphism and violation counting.

#include <memory>
#include <vector>

#include "grafrepair/graph.hpp"

namespace gr {

enum class CKind { True, False, Exists, Forall, Not, And, Or };

struct Cond;
using CondPtr = std::shared_ptr<const Cond>;

// AST node. `root` is the graph the condition is anchored at; for
// Exists/Forall, `anchor` is a total injective morphism root -> anchor.cod
// and subs[0] is rooted at anchor.cod.
struct Cond {
  CKind kind = CKind::True;
  TypedGraph root;
  Morphism anchor;
  std::vector<CondPtr> subs;
};

CondPtr make_true(const TypedGraph& root);
CondPtr make_false(const TypedGraph& root);
CondPtr make_exists(const Morphism& anchor, CondPtr sub);
CondPtr make_forall(const Morphism& anchor, CondPtr sub);
CondPtr make_not(CondPtr sub);
// Empty conjunction normalizes to True, empty disjunction to False,
// singletons to the sole member.
CondPtr make_and(const TypedGraph& root, std::vector<CondPtr> subs);
CondPtr make_or(const TypedGraph& root, std::vector<CondPtr> subs);

// Structural equality (ids included).
bool cond_equal(const CondPtr& a, const CondPtr& b);
// Number of AST nodes; the complexity measure used in tests.
std::size_t cond_size(const CondPtr& c);

// p |= c. dom(p) must equal c's root graph; p total injective.
bool satisfies(const Morphism& p, const CondPtr& c);
// G |= c for a constraint (condition over the empty graph).
bool graph_satisfies(const TypedGraph& g, const CondPtr& c);

// Alternating chain C_0 = empty, C_1, ..., C_n with id-inclusions; the
// quantifier binding C_{j} is universal iff j is odd. terminal_true
// distinguishes chains ending in an existential True leaf (n even) from
// chains ending in a universal False leaf (n odd).
struct UANF {
  std::vector<TypedGraph> graphs;  // C_0 .. C_n; C_i id-subgraph of C_{i+1}
  bool terminal_true = true;

  int nlvl() const { return static_cast<int>(graphs.size()) - 1; }
  const TypedGraph& graph(int k) const { return graphs.at(static_cast<std::size_t>(k)); }
  Morphism inclusion(int k) const;  // a_k : C_k -> C_{k+1}
  // Quantifier of the subcondition at layer k (binder of C_{k+1}):
  // universal iff k is even.
  bool layer_universal(int k) const { return k % 2 == 0; }
};

// Full condition tree of c (a constraint over the empty graph).
CondPtr uanf_to_condition(const UANF& c);

// Chain condition rooted at C_from, quantifying C_{from+1}..C_to, with
// `tail` (rooted at C_to) as the innermost condition.
CondPtr chain_condition(const UANF& c, int from, int to, CondPtr tail);

// Normalizes a condition in alternating form to UANF: wraps a leading
// existential, collapses bijective inner inclusions, rewrites the endings
// Exists(C,false) / Forall(C,true) to false/true, and renumbers the chain
// into id-inclusion form. Throws std::invalid_argument when the input is
// not an alternating chain.
UANF to_uanf(const CondPtr& c);

// Subcondition at layer k (rooted at C_k); True for k = -1.
CondPtr subcondition_at_layer(const UANF& c, int k);
// Replacement starting from layer k: the chain down to C_k with `e`
// (rooted at C_k) spliced in.
CondPtr replace_from_layer(const UANF& c, int k, CondPtr e);
// Truncated ("cut") condition after layer k. Defined for
// -1 <= k <= nlvl-1; values above nlvl-1 are clamped (cut at nlvl-1 is c).
CondPtr truncate_after_layer(const UANF& c, int k);
bool satisfies_up_to_layer(const Morphism& p, const UANF& c, int k);
bool graph_satisfies_up_to_layer(const TypedGraph& g, const UANF& c, int k);

// Largest k with G |=_k c (layer scan over odd k; nlvl-1 when G |= c).
int kmax(const TypedGraph& g, const UANF& c);

// Intermediate condition: replace_from_layer(k, Exists(C_k -> cp, true)),
// for odd k and cp an intermediate graph of ig(C_k, C_{k+1}).
CondPtr intermediate_condition(const UANF& c, int k, const TypedGraph& cp);

// Shift of c over i: for every m with dom(m) = cod(i),
// m |= shift(c, i)  iff  m . i |= c.
CondPtr shift_over_morphism(const CondPtr& c, const Morphism& i);

// Non-negative integer extended with a distinct infinity.
struct ExtInt {
  bool infinite = false;
  long long value = 0;

  static ExtInt inf() { return {true, 0}; }
  static ExtInt of(long long v) { return {false, v}; }
  bool operator==(const ExtInt& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator<(const ExtInt& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const ExtInt& o) const { return *this < o || *this == o; }
};

// Number of violations at layer j: 0 below kmax+1; the intermediate-graph
// sum (or the plain occurrence count of C_{kmax+2} when the next
// subcondition is the False leaf) at kmax+1; infinity above.
ExtInt number_of_violations(const TypedGraph& g, const UANF& c, int j);

// The truncation-at-0 of the subcondition at layer m, rooted at C_m: the
// "violation witness" condition p is tested against. Equals
// Exists(C_m -> C_{m+1}, true) for m < nlvl, and the terminal leaf at nlvl.
CondPtr cut0_of_subcondition(const UANF& c, int m);

// Occurrences p of C_{k+2} in G that violate cut0_of_subcondition(c, k+2)
// and whose restrictions to C_1..C_{k+1} satisfy the corresponding
// subconditions of truncate_after_layer(c, k). k odd, -1 <= k <= nlvl-2.
std::vector<Morphism> potentially_increasing_occurrences(const TypedGraph& g,
                                                         const UANF& c, int k);

}  // namespace gr
