#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "grafrepair/rewrite.hpp"

using namespace gr;

TEST_CASE("apply inserts with fresh ids and tracks preserved ids") {
  auto r = rule_without_ac(fx::addF());
  auto ms = matches(r, fx::G0());
  REQUIRE(ms.size() == 1);
  auto t = apply(r, ms[0]);
  CHECK(t.after.nodes.size() == 2);
  CHECK(t.after.edges.size() == 1);
  CHECK(graph_isomorphic(t.after, fx::CF()));
  // the Class survives under its original id
  CHECK(t.track.node_map.at(0) == 0);
  CHECK(t.track.is_injective());
  CHECK(validate_morphism(t.comatch));
  CHECK(t.comatch.is_total());
}

TEST_CASE("dangling edges block deletion") {
  auto r = rule_without_ac(fx::delF());
  // deleting the owned Feature of CF would leave the owns edge dangling
  auto all = matches(r, fx::CF(), /*only_applicable=*/false);
  CHECK(all.size() == 1);
  CHECK(matches(r, fx::CF()).empty());
  CHECK(!plain_applicable(fx::delF(), all[0]));
  // on a discrete Feature it applies
  auto ok = matches(r, fx::F());
  REQUIRE(ok.size() == 1);
  auto t = apply(r, ok[0]);
  CHECK(t.after.nodes.empty());
}

TEST_CASE("application conditions gate matches") {
  // addF only at Classes that own nothing yet
  auto notowns = make_not(make_exists(inclusion_morphism(fx::C(), fx::CF()),
                                      make_true(fx::CF())));
  auto guarded = make_rule(fx::addF(), notowns);
  CHECK(matches(guarded, fx::G0()).size() == 1);
  CHECK(matches(guarded, fx::G1()).empty());
  CHECK(matches(guarded, fx::G2()).size() == 2);
}

TEST_CASE("invert_plain swaps sides") {
  auto inv = invert_plain(fx::addF());
  CHECK(inv.lhs == fx::CF());
  CHECK(inv.rhs == fx::C());
  auto t = apply(rule_without_ac(inv), identity_morphism(fx::CF()));
  CHECK(t.after == fx::C());
}

TEST_CASE("validate_rule rejects non-spans") {
  PlainRule bad;
  bad.lhs = fx::C();
  bad.interface = fx::F();  // not a subgraph of lhs
  bad.rhs = fx::F();
  CHECK(!validate_rule(rule_without_ac(bad)).empty());
  CHECK(validate_rule(rule_without_ac(fx::addF())).empty());
}

TEST_CASE("shift over rule satisfies its defining property") {
  std::vector<PlainRule> rules = {fx::addF(), fx::delDep(), fx::delOwns(),
                                  fx::addDep()};
  // conditions over the respective rhs
  for (const auto& rho : rules) {
    // extend the rhs by one fresh Class to get a proper existential
    auto ext = rho.rhs;
    ext.nodes[ext.max_id() + 1] = "Class";
    std::vector<CondPtr> aps = {
        make_exists(inclusion_morphism(rho.rhs, ext), make_true(ext)),
        make_forall(inclusion_morphism(rho.rhs, ext), make_false(ext))};
    for (const auto& ap : aps) {
      auto shifted = shift_over_rule(ap, rho);
      for (const auto& host : enumerate_hosts(fx::tg(), 2)) {
        for (const auto& m : matches(rule_without_ac(rho), host)) {
          auto t = apply(rule_without_ac(rho), m);
          CHECK(satisfies(t.comatch, ap) == satisfies(m, shifted));
        }
      }
    }
  }
}

TEST_CASE("concurrent rule reproduces a derivation") {
  auto r = rule_without_ac(fx::addF());
  auto m0 = matches(r, fx::G2())[0];
  auto t0 = apply(r, m0);
  auto ms1 = matches(r, t0.after);
  REQUIRE(!ms1.empty());
  auto t1 = apply(r, ms1[0]);
  auto conc = concurrent_rule({t0, t1});
  CHECK(conc.lhs == fx::G2());
  CHECK(conc.rhs == t1.after);
  auto replay = apply(rule_without_ac(conc), identity_morphism(fx::G2()));
  CHECK(replay.after == t1.after);
}

TEST_CASE("derived rules stay applicable") {
  auto c = fx::c_one();
  auto drs = derived_rules(rule_without_ac(fx::addF()), c, -1);
  CHECK(!drs.empty());
  for (const auto& d : drs) CHECK(validate_rule(d).empty());
}

TEST_CASE("track composition over two steps") {
  auto r = rule_without_ac(fx::delDep());
  auto host = fx::FF();
  auto m = matches(r, host)[0];
  auto t = apply(r, m);
  auto r2 = rule_without_ac(fx::delF());
  auto m2 = matches(r2, t.after)[0];
  auto t2 = apply(r2, m2);
  auto tk = track_compose(t.track, t2.track);
  CHECK(tk.node_map.size() == 1);  // one Feature survives both steps
  CHECK(tk.edge_map.empty());
}
