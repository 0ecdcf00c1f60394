#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "grafrepair/repair.hpp"

#include "json.hpp"

namespace gr {

using Json = nlohmann::ordered_json;

// Schema violation with a JSON-pointer-style location.
struct ParseError : std::runtime_error {
  std::string location;
  ParseError(const std::string& loc, const std::string& what)
      : std::runtime_error(loc + ": " + what), location(loc) {}
};

Json type_graph_to_json(const TypeGraph& tg);
TypeGraphPtr type_graph_from_json(const Json& j, const std::string& loc = "");

Json graph_to_json(const TypedGraph& g);
TypedGraph graph_from_json(const Json& j, const TypeGraphPtr& tg,
                           const std::string& loc = "");

Json morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const Json& j, const TypedGraph& dom,
                            const TypedGraph& cod, const std::string& loc = "");

Json condition_to_json(const CondPtr& c);
CondPtr condition_from_json(const Json& j, const TypeGraphPtr& tg,
                            const std::string& loc = "");

// Constraints are stored as UANF chains (graph list + terminal flag, the
// inclusions being id-inclusions); a general condition under key "anf" is
// accepted and normalized.
Json constraint_to_json(const UANF& c);
UANF constraint_from_json(const Json& j, const TypeGraphPtr& tg,
                          const std::string& loc = "");

Json plain_rule_to_json(const PlainRule& r);
PlainRule plain_rule_from_json(const Json& j, const TypeGraphPtr& tg,
                               const std::string& loc = "");

Json rule_to_json(const Rule& r);
Rule rule_from_json(const Json& j, const TypeGraphPtr& tg,
                    const std::string& loc = "");

Json repairing_set_to_json(const RepairingSet& r);
RepairingSet repairing_set_from_json(const Json& j, const TypeGraphPtr& tg,
                                     const std::string& loc = "");

Json trace_to_json(const RepairTrace& t);
std::string trace_to_jsonl(const RepairTrace& t);

std::string graph_to_dot(const TypedGraph& g, const std::string& name = "G");

// Canonical serialization used for files: 2-space indent, trailing newline.
std::string to_canonical_string(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

struct Workspace {
  TypeGraphPtr tg;
  std::map<std::string, TypedGraph> graphs;
  std::map<std::string, Rule> rules;
  std::map<std::string, UANF> constraints;
  std::uint64_t seed = 0;
  int bound = 3;
};

}  // namespace gr
