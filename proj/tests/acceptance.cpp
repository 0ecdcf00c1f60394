// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit when
// any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "grafrepair/acsynth.hpp"
#include "grafrepair/conflicts.hpp"
#include "grafrepair/consistency.hpp"
#include "grafrepair/repair.hpp"
#include "oracles.hpp"

using namespace gr;

namespace {

std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

// ---- shared pools -------------------------------------------------------

std::vector<UANF> fixture_constraints() {
  return {fx::c_one(), fx::c_noDep(), fx::c_deep()};
}

// Replace an owned Feature by a fresh one.
PlainRule swapF() {
  auto rhs = fx::make_graph({{0, "Class"}, {2, "Feature"}},
                            {{1, 0, 2, "owns"}});
  return make_plain_rule(fx::CF(), fx::C(), rhs);
}
// Connect a disconnected Class/Feature pair.
PlainRule addOwns() {
  return make_plain_rule(fx::CFdisc(), fx::CFdisc(), fx::CF());
}
// Insert a Class owning a Feature from nothing.
PlainRule addCF() {
  auto e = empty_graph(fx::tg());
  return make_plain_rule(e, e, fx::CF());
}

std::vector<PlainRule> fuzz_rules() {
  auto rs = fx::all_rules();
  rs.push_back(swapF());
  rs.push_back(addOwns());
  rs.push_back(addCF());
  return rs;
}

// Handcrafted hosts beyond the 3-node enumeration, for deeper constraints.
std::vector<TypedGraph> extra_hosts() {
  std::vector<TypedGraph> out;
  // bare Class next to a Class owning two Features (no dep)
  out.push_back(fx::make_graph(
      {{0, "Class"}, {1, "Class"}, {2, "Feature"}, {3, "Feature"}},
      {{0, 1, 2, "owns"}, {1, 1, 3, "owns"}}));
  // Class owning two Features with the dep in place
  out.push_back(fx::make_graph(
      {{0, "Class"}, {1, "Feature"}, {2, "Feature"}},
      {{0, 0, 1, "owns"}, {1, 0, 2, "owns"}, {2, 1, 2, "dep"}}));
  // dep triangle
  out.push_back(fx::make_graph(
      {{0, "Feature"}, {1, "Feature"}, {2, "Feature"}},
      {{0, 0, 1, "dep"}, {1, 1, 2, "dep"}, {2, 0, 2, "dep"}}));
  return out;
}

bool timed(const char* label, double budget_s, const std::function<bool()>& f,
           int idx) {
  g_notes.clear();
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string err;
  try {
    ok = f();
  } catch (const std::exception& e) {
    err = e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  if (dt > budget_s) {
    note("over time budget: " + std::to_string(dt) + "s > " +
         std::to_string(budget_s) + "s");
    ok = false;
  }
  if (!err.empty()) note("exception: " + err);
  std::printf("criterion %d (%s): %s [%.2fs]\n", idx, label,
              ok ? "PASS" : "FAIL", dt);
  if (!ok)
    for (const auto& n : g_notes) std::printf("  - %s\n", n.c_str());
  return ok;
}

// ---- criterion 1: satisfaction agrees with the brute-force oracle -------

bool crit1() {
  auto hosts = enumerate_hosts(fx::tg(), 2);
  auto big = enumerate_hosts(fx::tg(), 3);
  // add a deterministic sample of the 3-node hosts
  for (std::size_t i = 0; i < big.size(); i += 7) hosts.push_back(big[i]);
  std::vector<CondPtr> cs;
  for (const auto& u : fixture_constraints()) cs.push_back(uanf_to_condition(u));
  // a non-chain condition: Class exists and no dep edge exists
  auto e = empty_graph(fx::tg());
  cs.push_back(make_and(
      e, {make_exists(inclusion_morphism(e, fx::C()), make_true(fx::C())),
          make_not(make_exists(inclusion_morphism(e, fx::FF()),
                               make_true(fx::FF())))}));
  // disjunction with negation underneath
  cs.push_back(make_or(
      e, {make_forall(inclusion_morphism(e, fx::F()), make_false(fx::F())),
          make_exists(inclusion_morphism(e, fx::CF()), make_true(fx::CF()))}));
  int pairs = 0;
  for (const auto& c : cs)
    for (const auto& g : hosts) {
      ++pairs;
      if (graph_satisfies(g, c) != oracle::graph_satisfies(g, c)) {
        note("mismatch on host " + graph_key(g));
        return false;
      }
    }
  if (pairs < 500) {
    note("only " + std::to_string(pairs) + " pairs checked");
    return false;
  }
  return true;
}

// ---- criterion 2: shift lemmas ------------------------------------------

bool crit2() {
  auto hosts = enumerate_hosts(fx::tg(), 2);
  // shift over morphism: m |= shift(c, i) iff m.i |= c
  std::vector<std::pair<CondPtr, Morphism>> cases;
  auto c_sub = subcondition_at_layer(fx::c_one(), 1);  // over C
  for (const auto& i : enumerate_monomorphisms(fx::C(), fx::CF()))
    cases.push_back({c_sub, i});
  for (const auto& i : enumerate_monomorphisms(fx::C(), fx::CFF()))
    cases.push_back({c_sub, i});
  auto d_sub = subcondition_at_layer(fx::c_deep(), 2);  // over C2
  for (const auto& i : enumerate_monomorphisms(fx::c_deep().graph(2),
                                               fx::c_deep().graph(3)))
    cases.push_back({d_sub, i});
  for (const auto& [c, i] : cases) {
    auto s = shift_over_morphism(c, i);
    for (const auto& host : hosts)
      for (const auto& m : enumerate_monomorphisms(i.cod, host))
        if (satisfies(m, s) != oracle::satisfies(compose(i, m), c)) {
          note("shift-over-morphism mismatch on " + graph_key(host));
          return false;
        }
  }
  // shift over rule: comatch |= ap iff match |= shift(ap, rho)
  for (const auto& rho : fuzz_rules()) {
    if (rho.rhs.nodes.empty()) continue;
    auto ext = rho.rhs;
    ext.nodes[ext.max_id() + 1] = "Feature";
    std::vector<CondPtr> aps = {
        make_exists(inclusion_morphism(rho.rhs, ext), make_true(ext)),
        make_forall(inclusion_morphism(rho.rhs, ext), make_false(ext)),
        make_not(make_exists(inclusion_morphism(rho.rhs, ext),
                             make_true(ext)))};
    for (const auto& ap : aps) {
      auto s = shift_over_rule(ap, rho);
      for (const auto& host : hosts)
        for (const auto& m : matches(rule_without_ac(rho), host)) {
          auto t = apply(rule_without_ac(rho), m);
          if (oracle::satisfies(t.comatch, ap) != satisfies(m, s)) {
            note("shift-over-rule mismatch on " + graph_key(host));
            return false;
          }
        }
    }
  }
  return true;
}

// ---- criterion 3: kmax against the brute-force layer scan ---------------

bool crit3() {
  std::mt19937_64 rng(12345);
  auto pool = enumerate_hosts(fx::tg(), 3);
  std::vector<TypedGraph> hosts = {fx::G0(), fx::G1(), fx::G2(), fx::FF(),
                                   fx::FFdisc(), fx::CFF(),
                                   empty_graph(fx::tg())};
  for (int i = 0; i < 200; ++i)
    hosts.push_back(pool[rng() % pool.size()]);
  for (const auto& c : fixture_constraints())
    for (const auto& g : hosts)
      if (kmax(g, c) != oracle::kmax(g, c)) {
        note("kmax mismatch on " + graph_key(g));
        return false;
      }
  return true;
}

// ---- criterion 4: layer-inference table ---------------------------------

bool crit4() {
  std::vector<UANF> cs = {fx::c_one(), fx::c_deep()};
  auto hosts = enumerate_hosts(fx::tg(), 3);
  for (auto& h : extra_hosts()) hosts.push_back(h);
  for (const auto& c : cs) {
    int n = c.nlvl();
    for (const auto& g : hosts) {
      bool full = graph_satisfies_up_to_layer(g, c, n - 1);
      std::vector<bool> sat(static_cast<std::size_t>(n) + 1);
      for (int k = -1; k <= n - 1; ++k)
        sat[static_cast<std::size_t>(k + 1)] =
            graph_satisfies_up_to_layer(g, c, k);
      auto at = [&](int k) { return sat[static_cast<std::size_t>(k + 1)]; };
      int km = kmax(g, c);
      for (int k = 0; k <= n - 1; ++k) {
        if (k % 2 == 0 && at(k)) {
          // even satisfaction propagates upward and to full satisfaction
          for (int j = k + 1; j <= n - 1; ++j)
            if (!at(j)) { note("even-up failed"); return false; }
          if (!full) { note("even-full failed"); return false; }
        }
        if (at(k))
          for (int j = 1; j < k; j += 2)
            if (!at(j)) { note("down-to-odd failed"); return false; }
      }
      if (km < n - 1)
        for (int k = 0; k <= km; k += 2)
          if (at(k)) { note("even-below-kmax failed"); return false; }
      for (int k = 1; k <= km; k += 2)
        if (!at(k)) { note("odd-below-kmax failed"); return false; }
    }
  }
  // independence of the undetermined cells, witnessed over c_deep
  auto c = fx::c_deep();
  auto indep = [&](int k, int j) {
    bool with = false, without = false;
    for (const auto& g : hosts) {
      if (!graph_satisfies_up_to_layer(g, c, k)) continue;
      (graph_satisfies_up_to_layer(g, c, j) ? with : without) = true;
      if (with && without) return true;
    }
    note("no independence witness for k=" + std::to_string(k) +
         " j=" + std::to_string(j));
    return false;
  };
  // (even k, even j < k), (odd k, even j < k), (odd k, even j > k),
  // (odd k, odd j > k)
  return indep(2, 0) && indep(3, 0) && indep(1, 2) && indep(1, 3);
}

// ---- criterion 5: relations between the consistency notions -------------

struct V6 {
  bool m, i, dm, di, g, p;
};

bool crit5() {
  std::vector<TypedGraph> hosts = enumerate_hosts(fx::tg(), 3);
  for (auto& h : extra_hosts()) hosts.push_back(h);
  // implications that must hold (from -> to), indices into {m,i,dm,di,g,p}
  auto fields = [](const V6& v) {
    return std::array<bool, 6>{v.m, v.i, v.dm, v.di, v.g, v.p};
  };
  const char* names[6] = {"maintaining", "increasing", "direct-maintaining",
                          "direct-increasing", "guaranteeing", "preserving"};
  std::set<std::pair<int, int>> imps = {{0, 5}, {1, 0}, {1, 5}, {2, 0},
                                        {2, 5}, {3, 0}, {3, 1}, {3, 2},
                                        {3, 5}, {4, 0}, {4, 5}};
  std::set<std::pair<int, int>> want_cex;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (a != b && !imps.count({a, b})) want_cex.insert({a, b});
  std::set<std::pair<int, int>> found;
  int total = 0;
  for (const auto& c : fixture_constraints()) {
    for (const auto& rho : fuzz_rules()) {
      auto rule = rule_without_ac(rho);
      for (const auto& host : hosts) {
        for (const auto& m : matches(rule, host)) {
          auto t = apply(rule, m);
          ++total;
          V6 v{is_maintaining(t, c),        is_increasing(t, c),
               is_direct_maintaining(t, c), is_direct_increasing(t, c),
               is_guaranteeing(t, c),       is_preserving(t, c)};
          auto f = fields(v);
          for (const auto& [a, b] : imps)
            if (f[a] && !f[b]) {
              note(std::string("implication ") + names[a] + " => " +
                   names[b] + " violated on " + graph_key(host));
              return false;
            }
          for (const auto& [a, b] : want_cex)
            if (f[a] && !f[b]) found.insert({a, b});
        }
      }
    }
  }
  if (total < 2000) {
    note("only " + std::to_string(total) + " transformations fuzzed");
    return false;
  }
  bool ok = true;
  for (const auto& [a, b] : want_cex)
    if (!found.count({a, b})) {
      note(std::string("no counterexample for ") + names[a] + " !=> " +
           names[b]);
      ok = false;
    }
  return ok;
}

// ---- criterion 6: soundness of the synthesized guards -------------------

bool crit6() {
  std::vector<TypedGraph> hosts = enumerate_hosts(fx::tg(), 3);
  for (auto& h : extra_hosts()) hosts.push_back(h);
  std::mt19937_64 rng(777);
  auto check_guarded = [&](const Rule& guarded, const UANF& c, int k,
                           bool increasing_mode, const char* what) {
    std::vector<std::pair<const TypedGraph*, Morphism>> apps;
    for (const auto& host : hosts) {
      if (kmax(host, c) != k) continue;
      for (const auto& m : matches(guarded, host))
        apps.push_back({&host, m});
    }
    for (const auto& [host, m] : apps) {
      auto t = apply(guarded, m);
      bool ok = increasing_mode ? is_direct_increasing(t, c)
                                : is_direct_maintaining(t, c);
      if (!ok) {
        note(std::string(what) + " unsound on " + graph_key(*host));
        return false;
      }
    }
    // 1000 additional randomized draws over the applicable pairs
    if (!apps.empty())
      for (int i = 0; i < 1000; ++i) {
        const auto& [host, m] = apps[rng() % apps.size()];
        auto t = apply(guarded, m);
        bool ok = increasing_mode ? is_direct_increasing(t, c)
                                  : is_direct_maintaining(t, c);
        if (!ok) {
          note(std::string(what) + " unsound (fuzz) on " + graph_key(*host));
          return false;
        }
      }
    return true;
  };

  for (const auto& c : fixture_constraints()) {
    for (const auto& rho : fuzz_rules()) {
      auto bare = rule_without_ac(rho);
      for (int k = -1; k <= c.nlvl() - 2; k += 2) {
        auto guarded = maintaining_ac_at_layer(bare, c, k);
        if (!check_guarded(guarded, c, k, false, "maintaining guard"))
          return false;
      }
    }
  }
  // increasing guards on the designated repair rules
  {
    auto c = fx::c_one();
    for (const auto& cp : intermediate_graphs(c.graph(1), c.graph(2))) {
      auto g = increasing_ac_at_layer(rule_without_ac(fx::addF()), c, -1, cp);
      if (!check_guarded(g, c, -1, true, "increasing guard")) return false;
    }
    auto nd = fx::c_noDep();
    auto g2 =
        increasing_ac_at_layer(rule_without_ac(fx::delDep()), nd, -1, fx::FF());
    if (!check_guarded(g2, nd, -1, true, "increasing guard")) return false;
  }
  // basic guards
  {
    auto c = fx::c_one();
    auto cl = classify_basic_increasing(fx::addF(), c, -1);
    if (cl.kind != BasicClassification::Kind::Inserting) {
      note("addF not classified as inserting");
      return false;
    }
    auto g = basic_ac(rule_without_ac(fx::addF()), cl, c, -1);
    if (!check_guarded(g, c, -1, true, "basic guard")) return false;
    auto nd = fx::c_noDep();
    auto cl2 = classify_basic_increasing(fx::delDep(), nd, -1);
    if (cl2.kind != BasicClassification::Kind::Deleting) {
      note("delDep not classified as deleting");
      return false;
    }
    auto g2 = basic_ac(rule_without_ac(fx::delDep()), cl2, nd, -1);
    if (!check_guarded(g2, nd, -1, true, "basic guard")) return false;
  }
  return true;
}

// ---- criterion 7: conflict characterizations agree ----------------------

TypedGraph grow_randomly(TypedGraph g, std::mt19937_64& rng, int steps) {
  auto types = std::vector<std::string>{"Class", "Feature"};
  for (int s = 0; s < steps; ++s) {
    // candidate new edges
    std::vector<Edge> cand;
    for (const auto& [et, sig] : g.tg->edge_types)
      for (const auto& [a, ta] : g.nodes)
        for (const auto& [b, tb] : g.nodes) {
          if (ta != sig.src || tb != sig.tar) continue;
          Edge e{a, b, et};
          bool dup = false;
          for (const auto& [id, ex] : g.edges)
            if (ex == e) dup = true;
          if (!dup) cand.push_back(e);
        }
    bool add_edge = !cand.empty() && (rng() % 2 == 0);
    if (add_edge) {
      g.edges[g.max_id() + 1] = cand[rng() % cand.size()];
    } else {
      g.nodes[g.max_id() + 1] = types[rng() % types.size()];
    }
  }
  return g;
}

bool crit7() {
  std::vector<UANF> cs = fixture_constraints();
  std::mt19937_64 rng(424242);
  while (cs.size() < 53) {
    int n = 1 + static_cast<int>(rng() % 3);
    UANF c;
    c.graphs.push_back(empty_graph(fx::tg()));
    for (int i = 1; i <= n; ++i)
      c.graphs.push_back(
          grow_randomly(c.graphs.back(), rng, 1 + static_cast<int>(rng() % 2)));
    c.terminal_true = (n % 2 == 0);
    cs.push_back(c);
  }
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    const auto& c = cs[ci];
    for (int a = 1; a <= c.nlvl(); ++a)
      for (int b = 1; b <= c.nlvl(); ++b) {
        if (a == b || (a + b) % 2 == 0) continue;
        if (causes_conflict(c, a, b) != causes_conflict_basic(c, a, b)) {
          note("disagreement at constraint " + std::to_string(ci) + " a=" +
               std::to_string(a) + " b=" + std::to_string(b));
          return false;
        }
      }
  }
  return true;
}

// ---- criterion 8: single-constraint repair terminates and repairs -------

bool crit8() {
  struct Case {
    TypedGraph g;
    UANF c;
  };
  std::vector<Case> cases = {
      {fx::G0(), fx::c_one()},
      {fx::G2(), fx::c_one()},
      {extra_hosts()[2], fx::c_noDep()},
      {extra_hosts()[0], fx::c_owned()},
      {fx::FFdisc(), fx::c_owned()},
      {fx::CFdisc(), fx::c_one()},
  };
  for (const auto& kase : cases) {
    auto r = construct_repairing_set(kase.c);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto [h, trace] = repair_one(kase.g, kase.c, r, seed);
      if (!graph_satisfies_up_to_layer(h, kase.c, kase.c.nlvl() - 1)) {
        note("result violates the constraint (seed " + std::to_string(seed) +
             ")");
        return false;
      }
      if (!validate_graph(h).empty()) {
        note("result graph malformed");
        return false;
      }
    }
  }
  return true;
}

// ---- criterion 9: repair of constraint sets -----------------------------

bool crit9() {
  auto c1 = fx::c_one();
  auto c2 = fx::c_noDep();
  auto r1 = construct_repairing_set(c1);
  auto r2 = construct_repairing_set(c2);
  std::vector<TypedGraph> gs = {
      fx::make_graph({{0, "Class"}, {1, "Feature"}, {2, "Feature"}},
                     {{0, 1, 2, "dep"}}),
      fx::G2(),
      extra_hosts()[2],
      empty_graph(fx::tg()),
  };
  for (const auto& g : gs)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto [h, trace] = repair_set(g, {c1, c2}, {r1, r2}, seed);
      if (!graph_satisfies(h, uanf_to_condition(c1)) ||
          !graph_satisfies(h, uanf_to_condition(c2))) {
        note("set repair left a violation (seed " + std::to_string(seed) +
             ")");
        return false;
      }
    }
  return true;
}

// ---- criterion 10: constructed sets validate ----------------------------

bool crit10() {
  std::vector<UANF> cs = {fx::c_one(), fx::c_owned()};
  UANF exist;  // exists(Class)
  exist.graphs = {empty_graph(fx::tg()), empty_graph(fx::tg()), fx::C()};
  exist.terminal_true = true;
  cs.push_back(exist);
  for (const auto& c : cs) {
    if (c.nlvl() < 2) continue;
    if (!is_circular_conflict_free(c)) {
      note("fixture unexpectedly not circular conflict free");
      return false;
    }
    auto r = construct_repairing_set(c);
    auto v = validate_repairing_set(r, c);
    if (!v.ok) {
      for (const auto& reason : v.reasons) note(reason);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  int failures = 0;
  failures += !timed("satisfaction vs oracle", 10, crit1, 1);
  failures += !timed("shift lemmas", 10, crit2, 2);
  failures += !timed("kmax vs brute force", 5, crit3, 3);
  failures += !timed("layer-inference table", 10, crit4, 4);
  failures += !timed("consistency-notion matrix", 30, crit5, 5);
  failures += !timed("application-condition soundness", 60, crit6, 6);
  failures += !timed("conflict characterizations", 20, crit7, 7);
  failures += !timed("single-constraint repair", 30, crit8, 8);
  failures += !timed("constraint-set repair", 30, crit9, 9);
  failures += !timed("repairing-set construction", 10, crit10, 10);
  return failures == 0 ? 0 : 1;
}
