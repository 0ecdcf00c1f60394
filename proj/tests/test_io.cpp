#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "fixtures.hpp"
#include "grafrepair/cli.hpp"
#include "grafrepair/io.hpp"
#include "grafrepair/repair.hpp"

using namespace gr;

namespace {
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("grtest_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) {
    auto p = (path / name).string();
    write_file(p, content);
    return p;
  }
};

int run(std::vector<std::string> args) {
  std::vector<const char*> argv = {"grafrepair"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_dispatch(static_cast<int>(argv.size()), argv.data());
}
}  // namespace

TEST_CASE("graph round trip is byte stable") {
  auto g = fx::CFF();
  auto j = graph_to_json(g);
  auto s = to_canonical_string(j);
  auto g2 = graph_from_json(Json::parse(s), fx::tg());
  CHECK(g2 == g);
  CHECK(to_canonical_string(graph_to_json(g2)) == s);
}

TEST_CASE("type graph, constraint, rule and set round trips") {
  auto tg = fx::tg();
  auto tg2 = type_graph_from_json(type_graph_to_json(*tg));
  CHECK(tg2->node_types == tg->node_types);
  REQUIRE(tg2->edge_types.count("owns") == 1);
  CHECK(tg2->edge_types.at("owns").src == "Class");

  for (const auto& c : {fx::c_one(), fx::c_noDep(), fx::c_deep()}) {
    auto s = to_canonical_string(constraint_to_json(c));
    auto c2 = constraint_from_json(Json::parse(s), tg);
    CHECK(c2.graphs == c.graphs);
    CHECK(c2.terminal_true == c.terminal_true);
    CHECK(to_canonical_string(constraint_to_json(c2)) == s);
  }

  auto r = rule_without_ac(fx::addF());
  auto s = to_canonical_string(rule_to_json(r));
  auto r2 = rule_from_json(Json::parse(s), tg);
  CHECK(r2.plain == r.plain);
  CHECK(to_canonical_string(rule_to_json(r2)) == s);

  auto rs = construct_repairing_set(fx::c_one());
  auto s2 = to_canonical_string(repairing_set_to_json(rs));
  auto rs2 = repairing_set_from_json(Json::parse(s2), tg);
  CHECK(rs2.rules == rs.rules);
  CHECK(rs2.sequences.size() == rs.sequences.size());
  CHECK(to_canonical_string(repairing_set_to_json(rs2)) == s2);
}

TEST_CASE("condition round trip") {
  auto c = uanf_to_condition(fx::c_one());
  auto s = to_canonical_string(condition_to_json(c));
  auto c2 = condition_from_json(Json::parse(s), fx::tg());
  CHECK(cond_equal(c, c2));
}

TEST_CASE("parse errors carry locations") {
  auto tg = fx::tg();
  Json bad = {{"nodes", {{"0", "Bogus"}}}, {"edges", Json::object()}};
  try {
    (void)graph_from_json(bad, tg, "/g");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location.rfind("/g", 0) == 0);
  }
  CHECK_THROWS_AS((void)constraint_from_json(Json::object(), tg),
                  ParseError);
}

TEST_CASE("dot export mentions all nodes") {
  auto d = graph_to_dot(fx::CF(), "X");
  CHECK(d.find("digraph") != std::string::npos);
  CHECK(d.find("Class") != std::string::npos);
  CHECK(d.find("owns") != std::string::npos);
}

TEST_CASE("cli: validate, match, check, kmax") {
  TempDir td;
  auto gpath = td.file("g.json", to_canonical_string(graph_to_json(fx::G0())));
  auto g1path = td.file("g1.json", to_canonical_string(graph_to_json(fx::G1())));
  auto cpath =
      td.file("c.json", to_canonical_string(constraint_to_json(fx::c_one())));

  CHECK(run({"validate", "-g", gpath}) == 0);
  CHECK(run({"check", "-g", g1path, "-c", cpath}) == 0);
  CHECK(run({"check", "-g", gpath, "-c", cpath}) == 1);
  CHECK(run({"kmax", "-g", gpath, "-c", cpath}) == 0);

  auto bad = td.file("bad.json", "{ not json");
  CHECK(run({"validate", "-g", bad}) == 2);
  auto badg = td.file("badg.json", "{\"nodes\":{\"0\":\"Bogus\"},\"edges\":{}}");
  CHECK(run({"validate", "-g", badg}) == 1);
  CHECK(run({"no-such-command"}) == 2);
}

TEST_CASE("cli: repair writes a satisfying graph") {
  TempDir td;
  auto gpath = td.file("g.json", to_canonical_string(graph_to_json(fx::G2())));
  auto cpath =
      td.file("c.json", to_canonical_string(constraint_to_json(fx::c_one())));
  auto out = (td.path / "out.json").string();
  CHECK(run({"repair", "-g", gpath, "-c", cpath, "--seed", "3", "-o", out}) ==
        0);
  auto h = graph_from_json(Json::parse(read_file(out)), fx::tg());
  CHECK(graph_satisfies(h, uanf_to_condition(fx::c_one())));
}
