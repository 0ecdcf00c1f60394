#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grafrepair/condition.hpp"
#include "grafrepair/graph.hpp"

namespace gr {

// A span L <- K -> R where K is an id-subgraph of both L and R; the two
// legs are the id inclusions.
struct PlainRule {
  TypedGraph lhs;
  TypedGraph interface;
  TypedGraph rhs;

  bool operator==(const PlainRule& o) const {
    return lhs == o.lhs && interface == o.interface && rhs == o.rhs;
  }
};

// Rule with a left application condition over the left-hand side.
struct Rule {
  PlainRule plain;
  CondPtr ac;  // condition over plain.lhs
};

PlainRule make_plain_rule(const TypedGraph& lhs, const TypedGraph& interface,
                          const TypedGraph& rhs);
Rule make_rule(const PlainRule& plain, CondPtr ac);
Rule rule_without_ac(const PlainRule& plain);

// Reversed rule (R <- K -> L); the application condition is dropped.
PlainRule invert_plain(const PlainRule& r);

std::vector<std::string> validate_rule(const Rule& r);

// A completed rewrite step G ==> H with its intermediate graph and the
// partial track morphism G -> H (identity on preserved ids).
struct Transformation {
  Rule rule;
  Morphism match;    // L -> G
  TypedGraph before;
  TypedGraph context;  // D, id-subgraph of both G and H
  TypedGraph after;
  Morphism comatch;  // R -> H
  Morphism track;    // partial G -> H
};

// Dangling-edge check plus application-condition check at the match.
bool is_applicable(const Rule& r, const Morphism& match);
bool plain_applicable(const PlainRule& r, const Morphism& match);

// Applies the rule; throws std::invalid_argument if not applicable.
Transformation apply(const Rule& r, const Morphism& match);

std::vector<Morphism> matches(const Rule& r, const TypedGraph& host,
                              bool only_applicable = true);

// Composes two consecutive partial track morphisms.
Morphism track_compose(const Morphism& t1, const Morphism& t2);

// Shifts a condition over the right-hand side to one over the left-hand
// side: the comatch satisfies the input iff the match satisfies the result.
CondPtr shift_over_rule(const CondPtr& ap, const PlainRule& rho);

// Concurrent rule of a derivation G_0 ==> ... ==> G_n; applying it at the
// identity match reproduces G_n.
PlainRule concurrent_rule(const std::vector<Transformation>& steps);

// Rules derived from `rule` for repairs at layer k of c: overlaps of the
// left-hand side with each target graph where the rule stays applicable.
std::vector<Rule> derived_rules(const Rule& rule, const UANF& c, int k);

}  // namespace gr
