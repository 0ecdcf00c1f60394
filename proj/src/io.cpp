#include "grafrepair/io.hpp"

#include <fstream>
#include <sstream>

namespace gr {

namespace {

const Json& need(const Json& j, const char* key, const std::string& loc) {
  if (!j.is_object()) throw ParseError(loc, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(loc + "/" + key, "missing required key");
  return *it;
}

int to_int_key(const std::string& s, const std::string& loc) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(loc, "key is not an integer: " + s);
  }
}

std::map<int, int> int_map_from_json(const Json& j, const std::string& loc) {
  if (!j.is_object()) throw ParseError(loc, "expected an object");
  std::map<int, int> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_integer())
      throw ParseError(loc + "/" + k, "expected an integer");
    out[to_int_key(k, loc + "/" + k)] = v.get<int>();
  }
  return out;
}

Json int_map_to_json(const std::map<int, int>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

}  // namespace

Json type_graph_to_json(const TypeGraph& tg) {
  Json j;
  j["nodes"] = Json::array();
  for (const auto& n : tg.node_types) j["nodes"].push_back(n);
  j["edges"] = Json::object();
  for (const auto& [name, et] : tg.edge_types) {
    Json e;
    e["src"] = et.src;
    e["tar"] = et.tar;
    j["edges"][name] = e;
  }
  return j;
}

TypeGraphPtr type_graph_from_json(const Json& j, const std::string& loc) {
  auto tg = std::make_shared<TypeGraph>();
  const Json& nodes = need(j, "nodes", loc);
  if (!nodes.is_array()) throw ParseError(loc + "/nodes", "expected an array");
  for (const auto& n : nodes) {
    if (!n.is_string()) throw ParseError(loc + "/nodes", "expected strings");
    tg->node_types.insert(n.get<std::string>());
  }
  const Json& edges = need(j, "edges", loc);
  if (!edges.is_object()) throw ParseError(loc + "/edges", "expected an object");
  for (const auto& [name, e] : edges.items()) {
    std::string eloc = loc + "/edges/" + name;
    EdgeType et{need(e, "src", eloc).get<std::string>(),
                need(e, "tar", eloc).get<std::string>()};
    if (!tg->node_types.count(et.src) || !tg->node_types.count(et.tar))
      throw ParseError(eloc, "edge type references an unknown node type");
    tg->edge_types[name] = et;
  }
  return tg;
}

Json graph_to_json(const TypedGraph& g) {
  Json j;
  j["nodes"] = Json::object();
  for (const auto& [v, ty] : g.nodes) j["nodes"][std::to_string(v)] = ty;
  j["edges"] = Json::object();
  for (const auto& [e, ed] : g.edges) {
    Json je;
    je["src"] = ed.src;
    je["tar"] = ed.tar;
    je["type"] = ed.type;
    j["edges"][std::to_string(e)] = je;
  }
  return j;
}

TypedGraph graph_from_json(const Json& j, const TypeGraphPtr& tg,
                           const std::string& loc) {
  TypedGraph g;
  g.tg = tg;
  const Json& nodes = need(j, "nodes", loc);
  if (!nodes.is_object()) throw ParseError(loc + "/nodes", "expected an object");
  for (const auto& [k, v] : nodes.items()) {
    std::string nloc = loc + "/nodes/" + k;
    if (!v.is_string()) throw ParseError(nloc, "expected a node type string");
    std::string ty = v.get<std::string>();
    if (!tg->node_types.count(ty)) throw ParseError(nloc, "unknown node type " + ty);
    g.nodes[to_int_key(k, nloc)] = ty;
  }
  const Json& edges = need(j, "edges", loc);
  if (!edges.is_object()) throw ParseError(loc + "/edges", "expected an object");
  for (const auto& [k, v] : edges.items()) {
    std::string eloc = loc + "/edges/" + k;
    Edge e;
    e.src = need(v, "src", eloc).get<int>();
    e.tar = need(v, "tar", eloc).get<int>();
    e.type = need(v, "type", eloc).get<std::string>();
    g.edges[to_int_key(k, eloc)] = e;
  }
  auto why = validate_graph(g);
  if (!why.empty()) throw ParseError(loc, why.front());
  return g;
}

Json morphism_to_json(const Morphism& m) {
  Json j;
  j["nodes"] = int_map_to_json(m.node_map);
  j["edges"] = int_map_to_json(m.edge_map);
  return j;
}

Morphism morphism_from_json(const Json& j, const TypedGraph& dom,
                            const TypedGraph& cod, const std::string& loc) {
  Morphism m;
  m.dom = dom;
  m.cod = cod;
  m.node_map = int_map_from_json(need(j, "nodes", loc), loc + "/nodes");
  m.edge_map = int_map_from_json(need(j, "edges", loc), loc + "/edges");
  std::vector<std::string> why;
  if (!validate_morphism(m, &why))
    throw ParseError(loc, why.empty() ? "invalid morphism" : why.front());
  return m;
}

Json condition_to_json(const CondPtr& c) {
  Json j;
  switch (c->kind) {
    case CKind::True:
    case CKind::False:
      j["kind"] = (c->kind == CKind::True) ? "true" : "false";
      j["root"] = graph_to_json(c->root);
      return j;
    case CKind::Exists:
    case CKind::Forall:
      j["kind"] = (c->kind == CKind::Exists) ? "exists" : "forall";
      j["root"] = graph_to_json(c->root);
      j["codomain"] = graph_to_json(c->anchor.cod);
      j["anchor"] = morphism_to_json(c->anchor);
      j["sub"] = condition_to_json(c->subs[0]);
      return j;
    case CKind::Not:
      j["kind"] = "not";
      j["sub"] = condition_to_json(c->subs[0]);
      return j;
    case CKind::And:
    case CKind::Or:
      j["kind"] = (c->kind == CKind::And) ? "and" : "or";
      j["root"] = graph_to_json(c->root);
      j["subs"] = Json::array();
      for (const auto& s : c->subs) j["subs"].push_back(condition_to_json(s));
      return j;
  }
  throw std::logic_error("condition_to_json: unreachable");
}

CondPtr condition_from_json(const Json& j, const TypeGraphPtr& tg,
                            const std::string& loc) {
  std::string kind = need(j, "kind", loc).get<std::string>();
  if (kind == "true" || kind == "false") {
    TypedGraph root = graph_from_json(need(j, "root", loc), tg, loc + "/root");
    return kind == "true" ? make_true(root) : make_false(root);
  }
  if (kind == "exists" || kind == "forall") {
    TypedGraph root = graph_from_json(need(j, "root", loc), tg, loc + "/root");
    TypedGraph cod =
        graph_from_json(need(j, "codomain", loc), tg, loc + "/codomain");
    Morphism a = morphism_from_json(need(j, "anchor", loc), root, cod,
                                    loc + "/anchor");
    if (!a.is_total() || !a.is_injective())
      throw ParseError(loc + "/anchor", "anchor must be total and injective");
    CondPtr sub = condition_from_json(need(j, "sub", loc), tg, loc + "/sub");
    if (!(sub->root == cod))
      throw ParseError(loc + "/sub", "subcondition root differs from codomain");
    return kind == "exists" ? make_exists(a, sub) : make_forall(a, sub);
  }
  if (kind == "not")
    return make_not(condition_from_json(need(j, "sub", loc), tg, loc + "/sub"));
  if (kind == "and" || kind == "or") {
    TypedGraph root = graph_from_json(need(j, "root", loc), tg, loc + "/root");
    const Json& subs = need(j, "subs", loc);
    if (!subs.is_array()) throw ParseError(loc + "/subs", "expected an array");
    std::vector<CondPtr> out;
    int i = 0;
    for (const auto& s : subs) {
      CondPtr sc =
          condition_from_json(s, tg, loc + "/subs/" + std::to_string(i++));
      if (!(sc->root == root))
        throw ParseError(loc + "/subs", "subcondition root differs");
      out.push_back(std::move(sc));
    }
    return kind == "and" ? make_and(root, std::move(out))
                         : make_or(root, std::move(out));
  }
  throw ParseError(loc + "/kind", "unknown condition kind " + kind);
}

Json constraint_to_json(const UANF& c) {
  Json j;
  j["graphs"] = Json::array();
  for (const auto& g : c.graphs) j["graphs"].push_back(graph_to_json(g));
  j["terminal"] = c.terminal_true;
  return j;
}

UANF constraint_from_json(const Json& j, const TypeGraphPtr& tg,
                          const std::string& loc) {
  if (j.is_object() && j.contains("anf"))
    return to_uanf(condition_from_json(j.at("anf"), tg, loc + "/anf"));
  UANF c;
  const Json& graphs = need(j, "graphs", loc);
  if (!graphs.is_array()) throw ParseError(loc + "/graphs", "expected an array");
  int i = 0;
  for (const auto& g : graphs)
    c.graphs.push_back(
        graph_from_json(g, tg, loc + "/graphs/" + std::to_string(i++)));
  const Json& term = need(j, "terminal", loc);
  if (!term.is_boolean()) throw ParseError(loc + "/terminal", "expected a boolean");
  c.terminal_true = term.get<bool>();
  if (c.graphs.empty()) throw ParseError(loc + "/graphs", "at least C_0 required");
  for (std::size_t k = 0; k + 1 < c.graphs.size(); ++k)
    if (!is_subgraph(c.graphs[k], c.graphs[k + 1]))
      throw ParseError(loc + "/graphs/" + std::to_string(k + 1),
                       "graph is not an id-extension of its predecessor");
  return c;
}

Json plain_rule_to_json(const PlainRule& r) {
  Json j;
  j["lhs"] = graph_to_json(r.lhs);
  j["interface"] = graph_to_json(r.interface);
  j["rhs"] = graph_to_json(r.rhs);
  return j;
}

PlainRule plain_rule_from_json(const Json& j, const TypeGraphPtr& tg,
                               const std::string& loc) {
  PlainRule r;
  r.lhs = graph_from_json(need(j, "lhs", loc), tg, loc + "/lhs");
  r.interface =
      graph_from_json(need(j, "interface", loc), tg, loc + "/interface");
  r.rhs = graph_from_json(need(j, "rhs", loc), tg, loc + "/rhs");
  auto why = validate_rule(rule_without_ac(r));
  if (!why.empty()) throw ParseError(loc, why.front());
  return r;
}

Json rule_to_json(const Rule& r) {
  Json j = plain_rule_to_json(r.plain);
  if (r.ac && r.ac->kind != CKind::True) j["ac"] = condition_to_json(r.ac);
  return j;
}

Rule rule_from_json(const Json& j, const TypeGraphPtr& tg,
                    const std::string& loc) {
  Rule r;
  r.plain = plain_rule_from_json(j, tg, loc);
  if (j.is_object() && j.contains("ac")) {
    r.ac = condition_from_json(j.at("ac"), tg, loc + "/ac");
    if (!(r.ac->root == r.plain.lhs))
      throw ParseError(loc + "/ac", "application condition root must be the lhs");
  } else {
    r.ac = make_true(r.plain.lhs);
  }
  return r;
}

Json repairing_set_to_json(const RepairingSet& r) {
  Json j;
  j["rules"] = Json::array();
  for (const auto& pr : r.rules) j["rules"].push_back(plain_rule_to_json(pr));
  j["sequences"] = Json::object();
  for (const auto& [k, seq] : r.sequences) {
    Json js;
    js["target"] = seq.target;
    js["kind"] = seq.kind == RepairingSequence::Kind::Existential
                     ? "existential"
                     : "universal";
    js["steps"] = Json::array();
    for (const auto& st : seq.steps) {
      Json jstep;
      jstep["rule"] = plain_rule_to_json(st.rule);
      jstep["host"] = graph_to_json(st.match.cod);
      jstep["match"] = morphism_to_json(st.match);
      js["steps"].push_back(jstep);
    }
    js["concurrent"] = plain_rule_to_json(seq.concurrent);
    j["sequences"][std::to_string(k)] = js;
  }
  return j;
}

RepairingSet repairing_set_from_json(const Json& j, const TypeGraphPtr& tg,
                                     const std::string& loc) {
  RepairingSet r;
  const Json& rules = need(j, "rules", loc);
  if (!rules.is_array()) throw ParseError(loc + "/rules", "expected an array");
  int i = 0;
  for (const auto& pr : rules)
    r.rules.push_back(
        plain_rule_from_json(pr, tg, loc + "/rules/" + std::to_string(i++)));
  const Json& seqs = need(j, "sequences", loc);
  if (!seqs.is_object())
    throw ParseError(loc + "/sequences", "expected an object");
  for (const auto& [k, js] : seqs.items()) {
    std::string sloc = loc + "/sequences/" + k;
    RepairingSequence seq;
    seq.target = need(js, "target", sloc).get<int>();
    std::string kind = need(js, "kind", sloc).get<std::string>();
    if (kind == "existential")
      seq.kind = RepairingSequence::Kind::Existential;
    else if (kind == "universal")
      seq.kind = RepairingSequence::Kind::Universal;
    else
      throw ParseError(sloc + "/kind", "unknown sequence kind " + kind);
    const Json& steps = need(js, "steps", sloc);
    if (!steps.is_array()) throw ParseError(sloc + "/steps", "expected an array");
    int s = 0;
    for (const auto& jstep : steps) {
      std::string stloc = sloc + "/steps/" + std::to_string(s++);
      RepairingStep st;
      st.rule = plain_rule_from_json(need(jstep, "rule", stloc), tg,
                                     stloc + "/rule");
      TypedGraph host =
          graph_from_json(need(jstep, "host", stloc), tg, stloc + "/host");
      st.match = morphism_from_json(need(jstep, "match", stloc), st.rule.lhs,
                                    host, stloc + "/match");
      seq.steps.push_back(std::move(st));
    }
    seq.concurrent = plain_rule_from_json(need(js, "concurrent", sloc), tg,
                                          sloc + "/concurrent");
    if (to_int_key(k, sloc) != seq.target)
      throw ParseError(sloc, "sequence key differs from its target");
    r.sequences[seq.target] = std::move(seq);
  }
  return r;
}

Json trace_to_json(const RepairTrace& t) {
  Json j;
  j["seed"] = t.seed;
  j["entries"] = Json::array();
  for (const auto& e : t.entries) {
    Json je;
    je["iteration"] = e.iteration;
    je["inner"] = e.inner;
    je["layer"] = e.layer;
    je["occurrence"] = e.occurrence;
    je["branch"] = e.branch;
    je["sequence_target"] = e.sequence_target;
    je["nv"] = e.nv;
    j["entries"].push_back(je);
  }
  return j;
}

std::string trace_to_jsonl(const RepairTrace& t) {
  std::string out;
  Json head;
  head["seed"] = t.seed;
  out += head.dump() + "\n";
  Json full = trace_to_json(t);
  for (const auto& e : full["entries"]) out += e.dump() + "\n";
  return out;
}

std::string graph_to_dot(const TypedGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (const auto& [v, ty] : g.nodes)
    os << "  n" << v << " [label=\"" << v << ":" << ty << "\"];\n";
  for (const auto& [e, ed] : g.edges)
    os << "  n" << ed.src << " -> n" << ed.tar << " [label=\"" << e << ":"
       << ed.type << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_canonical_string(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, "cannot open file for writing");
  out << content;
}

}  // namespace gr
