#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "grafrepair/acsynth.hpp"

using namespace gr;

namespace {
// All transformations of `rule` on hosts with at most `bound` nodes.
template <typename Fn>
void for_each_application(const Rule& rule, int bound, Fn&& fn) {
  for (const auto& host : enumerate_hosts(fx::tg(), bound))
    for (const auto& m : matches(rule, host)) fn(apply(rule, m));
}
}  // namespace

TEST_CASE("trivial cases of the three parts") {
  auto c = fx::c_one();
  // k >= nlvl-2 makes part 1 trivially true
  CHECK(no_violation_inserted(fx::addF(), c, 1)->kind == CKind::True);
  CHECK(no_violation_inserted(fx::addF(), fx::c_deep(), 3)->kind ==
        CKind::True);
  // k = -1 makes part 3 trivially true
  CHECK(no_existentially_destroyed(fx::addF(), c, -1)->kind == CKind::True);
}

TEST_CASE("guarded addDep is inapplicable where it would break c_noDep") {
  auto nd = fx::c_noDep();
  auto guarded = maintaining_ac(rule_without_ac(fx::addDep()), nd);
  for_each_application(guarded, 3, [&](const Transformation& t) {
    CHECK(is_direct_maintaining(t, nd));
  });
}

TEST_CASE("guarded delF cannot destroy the witness of c_one") {
  auto c = fx::c_one();
  auto guarded = maintaining_ac_at_layer(rule_without_ac(fx::delF()), c, 1);
  bool any = false;
  for_each_application(guarded, 3, [&](const Transformation& t) {
    if (kmax(t.before, c) == 1) {
      any = true;
      CHECK(is_direct_maintaining(t, c));
    }
  });
  CHECK(any);  // the guard must not make the rule vacuous
}

TEST_CASE("maintaining_ac guards at every layer") {
  auto c = fx::c_one();
  for (const auto& plain : fx::all_rules()) {
    auto guarded = maintaining_ac(rule_without_ac(plain), c);
    for_each_application(guarded, 2, [&](const Transformation& t) {
      CHECK(is_direct_maintaining(t, c));
    });
  }
}

TEST_CASE("increasing_ac produces direct increasing applications") {
  auto c = fx::c_one();
  auto guarded =
      increasing_ac_at_layer(rule_without_ac(fx::addF()), c, -1, fx::CF());
  bool any = false;
  for_each_application(guarded, 3, [&](const Transformation& t) {
    if (kmax(t.before, c) == -1) {
      any = true;
      CHECK(is_direct_increasing(t, c));
    }
  });
  CHECK(any);

  auto nd = fx::c_noDep();
  auto g2 =
      increasing_ac_at_layer(rule_without_ac(fx::delDep()), nd, -1, fx::FF());
  bool any2 = false;
  for_each_application(g2, 3, [&](const Transformation& t) {
    if (kmax(t.before, nd) == -1) {
      any2 = true;
      CHECK(is_direct_increasing(t, nd));
    }
  });
  CHECK(any2);
}

TEST_CASE("basic_ac guards a basic increasing rule") {
  auto c = fx::c_one();
  auto cl = classify_basic_increasing(fx::addF(), c, -1);
  REQUIRE(cl.kind == BasicClassification::Kind::Inserting);
  auto guarded = basic_ac(rule_without_ac(fx::addF()), cl, c, -1);
  for_each_application(guarded, 3, [&](const Transformation& t) {
    if (kmax(t.before, c) == -1) CHECK(is_direct_increasing(t, c));
  });

  auto nd = fx::c_noDep();
  auto cl2 = classify_basic_increasing(fx::delDep(), nd, -1);
  REQUIRE(cl2.kind == BasicClassification::Kind::Deleting);
  auto g2 = basic_ac(rule_without_ac(fx::delDep()), cl2, nd, -1);
  for_each_application(g2, 3, [&](const Transformation& t) {
    if (kmax(t.before, nd) == -1) CHECK(is_direct_increasing(t, nd));
  });
}
