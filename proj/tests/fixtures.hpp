#pragma once
// Shared graphs, constraints and rules over the toy type graph used by the
// unit and acceptance tests.

#include <string>
#include <vector>

#include "grafrepair/condition.hpp"
#include "grafrepair/graph.hpp"
#include "grafrepair/rewrite.hpp"

namespace fx {

inline gr::TypeGraphPtr tg() { return gr::toy_type_graph(); }

inline gr::TypedGraph make_graph(
    const std::vector<std::pair<int, std::string>>& nodes,
    const std::vector<std::tuple<int, int, int, std::string>>& edges = {}) {
  gr::TypedGraph g;
  g.tg = tg();
  for (const auto& [id, ty] : nodes) g.nodes[id] = ty;
  for (const auto& [id, s, t, ty] : edges) g.edges[id] = gr::Edge{s, t, ty};
  return g;
}

// One Class node.
inline gr::TypedGraph C() { return make_graph({{0, "Class"}}); }
// One Feature node.
inline gr::TypedGraph F() { return make_graph({{0, "Feature"}}); }
// Class owning a Feature.
inline gr::TypedGraph CF() {
  return make_graph({{0, "Class"}, {1, "Feature"}}, {{0, 0, 1, "owns"}});
}
// Class and Feature, disconnected.
inline gr::TypedGraph CFdisc() {
  return make_graph({{0, "Class"}, {1, "Feature"}});
}
// Class owning a Feature, plus a second Feature.
inline gr::TypedGraph CFF() {
  return make_graph({{0, "Class"}, {1, "Feature"}, {2, "Feature"}},
                    {{0, 0, 1, "owns"}});
}
// Feature depending on a Feature.
inline gr::TypedGraph FF() {
  return make_graph({{0, "Feature"}, {1, "Feature"}}, {{0, 0, 1, "dep"}});
}
// Two Features, disconnected.
inline gr::TypedGraph FFdisc() {
  return make_graph({{0, "Feature"}, {1, "Feature"}});
}

inline gr::TypedGraph G0() { return C(); }
inline gr::TypedGraph G1() { return CF(); }
inline gr::TypedGraph G2() {
  return make_graph({{0, "Class"}, {1, "Class"}});
}

// forall(0 -> C, exists(C -> CF, true)): every Class owns a Feature.
inline gr::UANF c_one() {
  gr::UANF c;
  c.graphs = {gr::empty_graph(tg()), C(), CF()};
  c.terminal_true = true;
  return c;
}

// forall(0 -> FF, false): no dep edge between Features.
inline gr::UANF c_noDep() {
  gr::UANF c;
  c.graphs = {gr::empty_graph(tg()), FF()};
  c.terminal_true = false;
  return c;
}

// Four-level chain: every Class owns a Feature such that every further
// owned Feature has a dep from the first one.
// C1 = Class; C2 = C1 + owned Feature f0; C3 = C2 + owned Feature f1;
// C4 = C3 + dep f0 -> f1.
inline gr::UANF c_deep() {
  gr::UANF c;
  auto c1 = make_graph({{0, "Class"}});
  auto c2 = make_graph({{0, "Class"}, {1, "Feature"}}, {{0, 0, 1, "owns"}});
  auto c3 = make_graph({{0, "Class"}, {1, "Feature"}, {2, "Feature"}},
                       {{0, 0, 1, "owns"}, {1, 0, 2, "owns"}});
  auto c4 = make_graph(
      {{0, "Class"}, {1, "Feature"}, {2, "Feature"}},
      {{0, 0, 1, "owns"}, {1, 0, 2, "owns"}, {2, 1, 2, "dep"}});
  c.graphs = {gr::empty_graph(tg()), c1, c2, c3, c4};
  c.terminal_true = true;
  return c;
}

// Every Feature is owned by some Class: forall(F, exists(F -> FoC, true)).
inline gr::UANF c_owned() {
  gr::UANF c;
  auto f = F();
  auto foc = make_graph({{0, "Feature"}, {1, "Class"}}, {{0, 1, 0, "owns"}});
  c.graphs = {gr::empty_graph(tg()), f, foc};
  c.terminal_true = true;
  return c;
}

// Insert an owned Feature at a Class.
inline gr::PlainRule addF() { return gr::make_plain_rule(C(), C(), CF()); }
// Delete a dep edge between two Features.
inline gr::PlainRule delDep() {
  return gr::make_plain_rule(FF(), FFdisc(), FFdisc());
}
// Delete an isolated Feature.
inline gr::PlainRule delF() {
  return gr::make_plain_rule(F(), gr::empty_graph(tg()), gr::empty_graph(tg()));
}
// Insert an isolated Class.
inline gr::PlainRule addC() {
  return gr::make_plain_rule(gr::empty_graph(tg()), gr::empty_graph(tg()), C());
}
// Insert a dep edge between two Features.
inline gr::PlainRule addDep() {
  return gr::make_plain_rule(FFdisc(), FFdisc(), FF());
}
// Delete an owns edge.
inline gr::PlainRule delOwns() {
  return gr::make_plain_rule(CF(), CFdisc(), CFdisc());
}
// Identity rule on a Class.
inline gr::PlainRule idC() { return gr::make_plain_rule(C(), C(), C()); }

// Every plain fixture rule, for fuzzing pools.
inline std::vector<gr::PlainRule> all_rules() {
  return {addF(), delDep(), delF(), addC(), addDep(), delOwns(), idC()};
}

}  // namespace fx
