#include "grafrepair/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "grafrepair/acsynth.hpp"
#include "grafrepair/io.hpp"

namespace gr {

namespace {

TypeGraphPtr load_type_graph(const std::string& path) {
  if (path.empty()) return toy_type_graph();
  return type_graph_from_json(Json::parse(read_file(path)), path);
}

TypedGraph load_graph(const std::string& path, const TypeGraphPtr& tg) {
  return graph_from_json(Json::parse(read_file(path)), tg, path);
}

UANF load_constraint(const std::string& path, const TypeGraphPtr& tg) {
  return constraint_from_json(Json::parse(read_file(path)), tg, path);
}

Rule load_rule(const std::string& path, const TypeGraphPtr& tg) {
  return rule_from_json(Json::parse(read_file(path)), tg, path);
}

void emit_graph(const TypedGraph& g, const std::string& format,
                const std::string& out_path) {
  std::string text = format == "dot" ? graph_to_dot(g)
                                     : to_canonical_string(graph_to_json(g));
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GRAFREPAIR_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

Json conflict_graph_to_json(const ConflictGraph& g) {
  Json j;
  j["nodes"] = g.nodes;
  j["edges"] = Json::array();
  for (const auto& [s, t] : g.edges) {
    Json e;
    e["src"] = g.nodes[static_cast<std::size_t>(s)];
    e["tar"] = g.nodes[static_cast<std::size_t>(t)];
    j["edges"].push_back(e);
  }
  return j;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"Rule-based repair of typed graphs against nested constraints"};
  app.require_subcommand(1);

  std::string tg_path, graph_path, rule_path, constraint_path, out_path;
  std::string format = "json", mode, intermediate_path, set_path, trace_path;
  int layer = -1;
  bool layer_given = false;
  std::size_t match_index = 0;
  std::optional<std::uint64_t> seed_flag;
  int max_iterations = 100000;

  app.add_option("-t,--typegraph", tg_path, "type graph file (default: built-in)");

  auto add_common = [&](CLI::App* sub, bool g, bool c, bool r) {
    if (g) sub->add_option("-g,--graph", graph_path, "graph file")->required();
    if (c)
      sub->add_option("-c,--constraint", constraint_path, "constraint file")
          ->required();
    if (r) sub->add_option("-r,--rule", rule_path, "rule file")->required();
  };

  auto* sc_validate = app.add_subcommand("validate", "validate a file");
  sc_validate->add_option("-g,--graph", graph_path, "graph file");
  sc_validate->add_option("-r,--rule", rule_path, "rule file");
  sc_validate->add_option("-c,--constraint", constraint_path, "constraint file");

  auto* sc_match = app.add_subcommand("match", "enumerate applicable matches");
  add_common(sc_match, true, false, true);

  auto* sc_apply = app.add_subcommand("apply", "apply a rule");
  add_common(sc_apply, true, false, true);
  sc_apply->add_option("--match", match_index, "index of the applicable match");
  sc_apply->add_option("-o,--output", out_path, "output file");
  sc_apply->add_option("--format", format, "json|dot")
      ->check(CLI::IsMember({"json", "dot"}));

  auto* sc_check = app.add_subcommand("check", "check satisfaction");
  add_common(sc_check, true, true, false);
  auto* check_layer =
      sc_check->add_option("--layer", layer, "check satisfaction up to layer");

  auto* sc_kmax = app.add_subcommand("kmax", "largest satisfied layer");
  add_common(sc_kmax, true, true, false);

  auto* sc_nv = app.add_subcommand("nv", "number of violations at a layer");
  add_common(sc_nv, true, true, false);
  sc_nv->add_option("--layer", layer, "layer")->required();

  auto* sc_classify =
      app.add_subcommand("classify", "consistency verdict of a transformation");
  add_common(sc_classify, true, true, true);
  sc_classify->add_option("--match", match_index, "index of the applicable match");

  auto* sc_synth = app.add_subcommand("synth-ac", "synthesize application conditions");
  add_common(sc_synth, false, true, true);
  sc_synth->add_option("--mode", mode, "main|incr|basic")
      ->required()
      ->check(CLI::IsMember({"main", "incr", "basic"}));
  auto* synth_layer = sc_synth->add_option("--layer", layer, "layer k");
  sc_synth->add_option("--intermediate", intermediate_path,
                       "intermediate graph file (incr mode)");
  sc_synth->add_option("-o,--output", out_path, "output file");

  auto* sc_conflicts = app.add_subcommand("conflicts", "conflict analysis");
  sc_conflicts->add_option("-c,--constraint", constraint_path,
                           "single constraint file");
  sc_conflicts->add_option("--set", set_path, "constraint set file");

  auto* sc_repair = app.add_subcommand("repair", "repair a graph");
  sc_repair->add_option("-g,--graph", graph_path, "graph file")->required();
  sc_repair->add_option("-c,--constraint", constraint_path, "constraint file");
  sc_repair->add_option("--set", set_path, "constraint set file");
  sc_repair->add_option("-r,--rules", rule_path,
                        "repairing set file (default: constructed)");
  sc_repair->add_option("--seed", seed_flag, "PRNG seed (env GRAFREPAIR_SEED)");
  sc_repair->add_option("--max-iterations", max_iterations, "iteration cap");
  sc_repair->add_option("--trace", trace_path, "trace output file (JSON lines)");
  sc_repair->add_option("-o,--output", out_path, "output file");
  sc_repair->add_option("--format", format, "json|dot")
      ->check(CLI::IsMember({"json", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  layer_given = (check_layer->count() > 0) || (synth_layer->count() > 0) ||
                sc_nv->parsed();

  try {
    TypeGraphPtr tg = load_type_graph(tg_path);

    if (sc_validate->parsed()) {
      int given = (!graph_path.empty()) + (!rule_path.empty()) +
                  (!constraint_path.empty());
      if (given != 1) {
        std::cerr << "validate: exactly one of -g, -r, -c is required\n";
        return 2;
      }
      try {
        if (!graph_path.empty()) load_graph(graph_path, tg);
        if (!rule_path.empty()) load_rule(rule_path, tg);
        if (!constraint_path.empty()) load_constraint(constraint_path, tg);
      } catch (const ParseError& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return 1;
      }
      std::cout << "valid\n";
      return 0;
    }

    if (sc_match->parsed()) {
      Rule r = load_rule(rule_path, tg);
      TypedGraph g = load_graph(graph_path, tg);
      Json out = Json::array();
      for (const auto& m : matches(r, g)) out.push_back(morphism_to_json(m));
      std::cout << to_canonical_string(out);
      return out.empty() ? 1 : 0;
    }

    if (sc_apply->parsed()) {
      Rule r = load_rule(rule_path, tg);
      TypedGraph g = load_graph(graph_path, tg);
      auto ms = matches(r, g);
      if (match_index >= ms.size()) {
        std::cerr << "apply: no applicable match with index " << match_index
                  << "\n";
        return 1;
      }
      Transformation t = apply(r, ms[match_index]);
      emit_graph(t.after, format, out_path);
      return 0;
    }

    if (sc_check->parsed()) {
      TypedGraph g = load_graph(graph_path, tg);
      UANF c = load_constraint(constraint_path, tg);
      bool ok = layer_given ? graph_satisfies_up_to_layer(g, c, layer)
                            : graph_satisfies(g, uanf_to_condition(c));
      std::cout << (ok ? "true" : "false") << "\n";
      return ok ? 0 : 1;
    }

    if (sc_kmax->parsed()) {
      TypedGraph g = load_graph(graph_path, tg);
      UANF c = load_constraint(constraint_path, tg);
      std::cout << kmax(g, c) << "\n";
      return 0;
    }

    if (sc_nv->parsed()) {
      TypedGraph g = load_graph(graph_path, tg);
      UANF c = load_constraint(constraint_path, tg);
      ExtInt v = number_of_violations(g, c, layer);
      std::cout << (v.infinite ? std::string("inf") : std::to_string(v.value))
                << "\n";
      return 0;
    }

    if (sc_classify->parsed()) {
      Rule r = load_rule(rule_path, tg);
      TypedGraph g = load_graph(graph_path, tg);
      UANF c = load_constraint(constraint_path, tg);
      auto ms = matches(r, g);
      if (match_index >= ms.size()) {
        std::cerr << "classify: no applicable match with index " << match_index
                  << "\n";
        return 1;
      }
      Transformation t = apply(r, ms[match_index]);
      ConsistencyVerdict v = classify_transformation(t, c);
      Json out;
      out["preserving"] = v.preserving;
      out["guaranteeing"] = v.guaranteeing;
      out["maintaining"] = v.maintaining;
      out["increasing"] = v.increasing;
      out["direct_maintaining"] = v.direct_maintaining;
      out["direct_increasing"] = v.direct_increasing;
      out["sustaining"] = v.sustaining;
      out["improving"] = v.improving;
      out["direct_sustaining"] = v.direct_sustaining;
      out["direct_improving"] = v.direct_improving;
      std::cout << to_canonical_string(out);
      return 0;
    }

    if (sc_synth->parsed()) {
      Rule r = load_rule(rule_path, tg);
      UANF c = load_constraint(constraint_path, tg);
      Rule guarded = r;
      if (mode == "main") {
        guarded = layer_given ? maintaining_ac_at_layer(r, c, layer)
                              : maintaining_ac(r, c);
      } else if (mode == "incr") {
        if (!layer_given) {
          std::cerr << "synth-ac incr: --layer is required\n";
          return 2;
        }
        TypedGraph cp = intermediate_path.empty()
                            ? c.graph(layer + 2)
                            : load_graph(intermediate_path, tg);
        guarded = increasing_ac_at_layer(r, c, layer, cp);
      } else {
        if (!layer_given) {
          std::cerr << "synth-ac basic: --layer is required\n";
          return 2;
        }
        BasicClassification bc = classify_basic_increasing(r.plain, c, layer);
        if (bc.kind == BasicClassification::Kind::NotBasic) {
          std::cerr << "synth-ac basic: rule is not basic increasing at layer "
                    << layer << "\n";
          return 1;
        }
        guarded = basic_ac(r, bc, c, layer);
      }
      std::string text = to_canonical_string(rule_to_json(guarded));
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
      return 0;
    }

    if (sc_conflicts->parsed()) {
      if (!constraint_path.empty()) {
        UANF c = load_constraint(constraint_path, tg);
        ConflictGraph cg = conflict_graph(c);
        Json out = conflict_graph_to_json(cg);
        bool free = topological_ordering(cg).ok;
        out["circular_conflict_free"] = free;
        std::cout << to_canonical_string(out);
        return free ? 0 : 1;
      }
      if (set_path.empty()) {
        std::cerr << "conflicts: one of -c or --set is required\n";
        return 2;
      }
      Json j = Json::parse(read_file(set_path));
      std::vector<UANF> cs;
      std::vector<RepairingSet> rs;
      std::vector<std::string> names;
      int i = 0;
      for (const auto& cj : j.at("constraints"))
        cs.push_back(constraint_from_json(
            cj, tg, set_path + "/constraints/" + std::to_string(i++)));
      if (j.contains("rulesets")) {
        i = 0;
        for (const auto& rj : j.at("rulesets"))
          rs.push_back(repairing_set_from_json(
              rj, tg, set_path + "/rulesets/" + std::to_string(i++)));
      } else {
        for (const auto& c : cs) rs.push_back(construct_repairing_set(c));
      }
      if (j.contains("names"))
        for (const auto& nj : j.at("names"))
          names.push_back(nj.get<std::string>());
      ConflictGraph cg = conflict_graph_of_set(cs, rs, names);
      TopoResult topo = topological_ordering(cg);
      Json out = conflict_graph_to_json(cg);
      out["circular_conflict_free"] = topo.ok;
      if (topo.ok)
        out["order"] = topo.order;
      else
        out["cycle"] = topo.cycle;
      std::cout << to_canonical_string(out);
      return topo.ok ? 0 : 1;
    }

    if (sc_repair->parsed()) {
      TypedGraph g = load_graph(graph_path, tg);
      std::uint64_t seed = resolve_seed(seed_flag);
      TypedGraph h = g;
      RepairTrace trace;
      if (!constraint_path.empty()) {
        UANF c = load_constraint(constraint_path, tg);
        RepairingSet r = rule_path.empty()
                             ? construct_repairing_set(c)
                             : repairing_set_from_json(
                                   Json::parse(read_file(rule_path)), tg,
                                   rule_path);
        std::tie(h, trace) = repair_one(g, c, r, seed, max_iterations);
      } else if (!set_path.empty()) {
        Json j = Json::parse(read_file(set_path));
        std::vector<UANF> cs;
        std::vector<RepairingSet> rs;
        std::vector<std::string> names;
        int i = 0;
        for (const auto& cj : j.at("constraints"))
          cs.push_back(constraint_from_json(
              cj, tg, set_path + "/constraints/" + std::to_string(i++)));
        if (j.contains("rulesets")) {
          i = 0;
          for (const auto& rj : j.at("rulesets"))
            rs.push_back(repairing_set_from_json(
                rj, tg, set_path + "/rulesets/" + std::to_string(i++)));
        } else {
          for (const auto& c : cs) rs.push_back(construct_repairing_set(c));
        }
        if (j.contains("names"))
          for (const auto& nj : j.at("names"))
            names.push_back(nj.get<std::string>());
        std::tie(h, trace) =
            repair_set(g, cs, rs, seed, max_iterations, names);
      } else {
        std::cerr << "repair: one of -c or --set is required\n";
        return 2;
      }
      if (!trace_path.empty()) write_file(trace_path, trace_to_jsonl(trace));
      emit_graph(h, format, out_path);
      return 0;
    }

    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Json::parse_error& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gr
