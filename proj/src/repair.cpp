#include "grafrepair/repair.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gr {

namespace {

Morphism compose_track(const Morphism& p, const Morphism& track) {
  Morphism r;
  r.dom = p.dom;
  r.cod = track.cod;
  for (const auto& [x, gx] : p.node_map) {
    auto it = track.node_map.find(gx);
    if (it != track.node_map.end()) r.node_map[x] = it->second;
  }
  for (const auto& [x, gx] : p.edge_map) {
    auto it = track.edge_map.find(gx);
    if (it != track.edge_map.end()) r.edge_map[x] = it->second;
  }
  return r;
}

std::string morphism_key(const Morphism& m) {
  std::string s = "n";
  for (const auto& [a, b] : m.node_map)
    s += std::to_string(a) + ">" + std::to_string(b) + ";";
  s += "e";
  for (const auto& [a, b] : m.edge_map)
    s += std::to_string(a) + ">" + std::to_string(b) + ";";
  return s;
}

UANF universal_singleton(const TypedGraph& g) {
  UANF u;
  u.terminal_true = false;
  u.graphs.push_back(empty_graph(g.tg));
  u.graphs.push_back(g);
  return u;
}

std::vector<std::string> nv_snapshot(const TypedGraph& g, const UANF& c) {
  std::vector<std::string> out;
  for (int j = -1; j < c.nlvl(); ++j) {
    ExtInt v = number_of_violations(g, c, j);
    out.push_back(v.infinite ? "inf" : std::to_string(v.value));
  }
  return out;
}

// Replays a sequence's stored steps; returns the transformations or a
// reason why the replay failed.
bool replay_sequence(const RepairingSequence& seq, const TypedGraph& anchor,
                     std::vector<Transformation>* ts, std::string* why) {
  TypedGraph cur = anchor;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const RepairingStep& st = seq.steps[i];
    if (!(st.match.dom == st.rule.lhs) || !(st.match.cod == cur)) {
      *why = "step " + std::to_string(i) + " is not chained to the previous graph";
      return false;
    }
    if (!plain_applicable(st.rule, st.match)) {
      *why = "step " + std::to_string(i) + " is not applicable at its match";
      return false;
    }
    Transformation t = apply(rule_without_ac(st.rule), st.match);
    cur = t.after;
    ts->push_back(std::move(t));
  }
  if (ts->empty()) {
    *why = "sequence has no steps";
    return false;
  }
  return true;
}

}  // namespace

ValidationResult validate_repairing_sequence(const RepairingSequence& seq,
                                             const UANF& c, int k) {
  ValidationResult r;
  int n = c.nlvl();
  if (k < 1 || k > n) {
    r.reasons.push_back("target index out of range");
    return r;
  }
  bool existential = (k % 2 == 0);
  if (existential != (seq.kind == RepairingSequence::Kind::Existential)) {
    r.reasons.push_back("sequence kind does not match the target's binding");
    return r;
  }
  const TypedGraph& anchor = existential ? c.graph(k - 1) : c.graph(k);

  std::vector<Transformation> ts;
  std::string why;
  if (!replay_sequence(seq, anchor, &ts, &why)) {
    r.reasons.push_back(why);
    return r;
  }
  const TypedGraph& final_graph = ts.back().after;

  // Cumulative track from the anchor through every step.
  Morphism cum = identity_morphism(anchor);
  cum.cod = anchor;
  for (const auto& t : ts) {
    cum = track_compose(cum, t.track);
    if (existential && !cum.is_total()) {
      r.reasons.push_back("existential sequence deletes part of the anchor");
      return r;
    }
  }
  if (!existential &&
      cum.node_map.size() != anchor.nodes.size()) {
    r.reasons.push_back("universal sequence deletes a node of the occurrence");
    return r;
  }
  if (!graph_satisfies_up_to_layer(final_graph, c, k)) {
    r.reasons.push_back("final graph does not satisfy the constraint up to the target layer");
    return r;
  }
  PlainRule conc = concurrent_rule(ts);
  if (!(seq.concurrent == conc)) {
    r.reasons.push_back("cached concurrent rule differs from the recomputed one");
    return r;
  }

  // Shortcut: a chain landing exactly on C_k (existential) or on an
  // intermediate deletion target (universal) needs no further checks.
  bool shortcut = false;
  if (existential) {
    shortcut = graph_isomorphic(final_graph, c.graph(k));
  } else {
    shortcut = final_graph.nodes == c.graph(k).nodes &&
               is_subgraph(final_graph, c.graph(k));
  }
  if (shortcut) {
    r.ok = true;
    return r;
  }

  // General side conditions via the concurrent rule.
  for (int j = 1; j <= n; j += 2) {
    if (existential && causes_conflict(c, k, j)) continue;
    if (!is_basic_maintaining_at_layer(conc, universal_singleton(c.graph(j)),
                                       -1)) {
      r.reasons.push_back("concurrent rule may complete an occurrence of the universally bound graph at index " +
                          std::to_string(j));
      return r;
    }
  }
  r.ok = true;
  return r;
}

ValidationResult validate_repairing_set(const RepairingSet& r, const UANF& c) {
  ValidationResult v;
  v.ok = true;
  int n = c.nlvl();
  std::vector<int> required;
  for (int k = 2; k <= n; k += 2) required.push_back(k);
  if (!c.terminal_true && n >= 1) required.push_back(n);
  for (int k : required) {
    bool universal = (k % 2 == 1);
    if (universal) {
      bool has_edge = false;
      for (const auto& [e, _] : c.graph(k).edges)
        if (!c.graph(k - 1).has_edge(e)) has_edge = true;
      if (!has_edge) {
        v.ok = false;
        v.reasons.push_back(
            "no repairing sequence can exist for the universally bound graph at index " +
            std::to_string(k) + ": its new part contains no edge");
        continue;
      }
    }
    auto it = r.sequences.find(k);
    if (it == r.sequences.end()) {
      v.ok = false;
      v.reasons.push_back("missing repairing sequence for graph index " +
                          std::to_string(k));
      continue;
    }
    ValidationResult sv = validate_repairing_sequence(it->second, c, k);
    if (!sv.ok) {
      v.ok = false;
      for (auto& w : sv.reasons)
        v.reasons.push_back("sequence for index " + std::to_string(k) + ": " + w);
    }
  }
  for (const auto& [k, seq] : r.sequences)
    for (const auto& st : seq.steps)
      if (std::find(r.rules.begin(), r.rules.end(), st.rule) == r.rules.end()) {
        v.ok = false;
        v.reasons.push_back("a step rule of the sequence for index " +
                            std::to_string(k) + " is not in the rule set");
      }
  return v;
}

ValidationResult validate_for_set(const std::vector<RepairingSet>& rs,
                                  const std::vector<UANF>& cs) {
  ValidationResult v;
  v.ok = true;
  if (rs.size() != cs.size()) {
    v.ok = false;
    v.reasons.push_back("one repairing set per constraint is required");
    return v;
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    ValidationResult one = validate_repairing_set(rs[i], cs[i]);
    if (!one.ok) {
      v.ok = false;
      for (auto& w : one.reasons)
        v.reasons.push_back("constraint " + std::to_string(i) + ": " + w);
    }
  }
  return v;
}

RepairingSet construct_repairing_set(const UANF& c) {
  if (!is_circular_conflict_free(c))
    throw std::invalid_argument(
        "construct_repairing_set: constraint is not circular conflict free");
  int n = c.nlvl();
  if (n == 0 && !c.terminal_true)
    throw std::invalid_argument(
        "construct_repairing_set: constraint is unsatisfiable");
  RepairingSet out;

  auto add_rule = [&out](const PlainRule& r) {
    if (std::find(out.rules.begin(), out.rules.end(), r) == out.rules.end())
      out.rules.push_back(r);
  };

  // Existential graphs: single-element insertion chains through the
  // intermediate graphs, anchored at the preceding universal graph.
  for (int k = 2; k <= n; k += 2) {
    std::vector<TypedGraph> chainset;
    chainset.push_back(c.graph(k - 1));
    for (auto& x : intermediate_graphs(c.graph(k - 1), c.graph(k)))
      chainset.push_back(std::move(x));
    for (std::size_t i = 0; i < chainset.size(); ++i)
      for (std::size_t j = 0; j < chainset.size(); ++j)
        if (i != j && is_subgraph(chainset[i], chainset[j]) &&
            !(chainset[i] == chainset[j]))
          add_rule(PlainRule{chainset[i], chainset[i], chainset[j]});

    RepairingSequence seq;
    seq.target = k;
    seq.kind = RepairingSequence::Kind::Existential;
    std::vector<Transformation> ts;
    TypedGraph cur = c.graph(k - 1);   // position in the chainset
    TypedGraph host = c.graph(k - 1);  // evolving host graph
    while (!(cur == c.graph(k))) {
      const TypedGraph* next = nullptr;
      for (const auto& x : chainset)
        if (is_subgraph(cur, x) && !(cur == x)) {
          next = &x;  // chainset is size-sorted, first hit is minimal
          break;
        }
      if (!next)
        throw std::logic_error("construct_repairing_set: broken chain");
      PlainRule step{cur, cur, *next};
      auto ms = enumerate_monomorphisms(cur, host);
      if (ms.empty())
        throw std::logic_error("construct_repairing_set: no match in chain");
      Transformation t = apply(rule_without_ac(step), ms.front());
      seq.steps.push_back({step, ms.front()});
      ts.push_back(t);
      host = t.after;
      cur = *next;
    }
    seq.concurrent = concurrent_rule(ts);
    out.sequences[k] = std::move(seq);
  }

  // Trailing universal graph on a terminal-false constraint: delete edges
  // of the new part until the occurrence satisfies the constraint.
  if (!c.terminal_true && n >= 1) {
    int k = n;
    const TypedGraph& ck = c.graph(k);
    const TypedGraph& prev = c.graph(k - 1);
    std::vector<int> fresh_edges;
    for (const auto& [e, _] : ck.edges)
      if (!prev.has_edge(e)) fresh_edges.push_back(e);
    if (fresh_edges.empty())
      throw std::invalid_argument(
          "construct_repairing_set: the universally bound graph adds no edge; "
          "no repairing sequence exists");
    bool found = false;
    std::vector<TypedGraph> candidates;
    for (std::uint64_t keep = 0; keep < (1ull << fresh_edges.size()); ++keep) {
      TypedGraph x = ck;
      for (std::size_t i = 0; i < fresh_edges.size(); ++i)
        if (!(keep & (1ull << i)))
          x.edges.erase(fresh_edges[i]);
      candidates.push_back(std::move(x));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const TypedGraph& a, const TypedGraph& b) {
                if (a.edges.size() != b.edges.size())
                  return a.edges.size() < b.edges.size();
                return graph_key(a) < graph_key(b);
              });
    for (const auto& x : candidates) {
      if (x == ck) continue;
      if (!graph_satisfies_up_to_layer(x, c, k)) continue;
      PlainRule step{ck, x, x};
      add_rule(step);
      RepairingSequence seq;
      seq.target = k;
      seq.kind = RepairingSequence::Kind::Universal;
      Morphism id = identity_morphism(ck);
      seq.steps.push_back({step, id});
      Transformation t = apply(rule_without_ac(step), id);
      seq.concurrent = concurrent_rule({t});
      out.sequences[k] = std::move(seq);
      found = true;
      break;
    }
    if (!found)
      throw std::invalid_argument(
          "construct_repairing_set: no edge-deletion repair satisfies the "
          "constraint");
  }
  return out;
}

Transformation apply_sequence_at(const RepairingSequence& seq,
                                 const Morphism& p, const TypedGraph& g) {
  Morphism m = p;
  if (!(m.dom == seq.concurrent.lhs) || !(m.cod == g))
    throw std::invalid_argument("apply_sequence_at: occurrence does not fit");
  if (!plain_applicable(seq.concurrent, m))
    throw std::runtime_error(
        "apply_sequence_at: concurrent rule unexpectedly inapplicable");
  return apply(rule_without_ac(seq.concurrent), m);
}

namespace {

struct Pending {
  int layer;    // odd j
  Morphism occ; // C_j -> current graph
};

// Occurrences that the last transformation may have freshly violated:
// newly inserted or witness-losing occurrences of universally bound graphs
// below the focused layer, filtered by potential increasingness.
std::vector<Pending> collect_pending(const Transformation& t, const UANF& c,
                                     int km) {
  std::vector<Pending> m;
  for (int j = 1; j < km + 2; j += 2) {
    std::set<std::string> pot;
    for (const auto& q : potentially_increasing_occurrences(t.after, c, j - 2))
      pot.insert(morphism_key(q));
    CondPtr wit = make_exists(c.inclusion(j), make_true(c.graph(j + 1)));
    std::map<std::string, std::vector<Morphism>> pre;
    for (const auto& qp : enumerate_monomorphisms(c.graph(j), t.before)) {
      Morphism tq = compose_track(qp, t.track);
      if (tq.is_total()) pre[morphism_key(tq)].push_back(qp);
    }
    for (const auto& q : enumerate_monomorphisms(c.graph(j), t.after)) {
      if (!pot.count(morphism_key(q))) continue;
      auto it = pre.find(morphism_key(q));
      bool fresh = (it == pre.end());
      bool lost = false;
      if (!fresh && !satisfies(q, wit))
        for (const auto& qp : it->second)
          if (satisfies(qp, wit)) lost = true;
      if (fresh || lost) m.push_back({j, q});
    }
  }
  return m;
}

const RepairingSequence* pick_sequence(const RepairingSet& r, int universal_k,
                                       int existential_k, int branch) {
  auto u = r.sequences.find(universal_k);
  auto e = r.sequences.find(existential_k);
  if (branch == 0 && u != r.sequences.end()) return &u->second;
  if (e != r.sequences.end()) return &e->second;
  if (u != r.sequences.end()) return &u->second;
  return nullptr;
}

}  // namespace

std::pair<TypedGraph, RepairTrace> repair_one(const TypedGraph& g,
                                              const UANF& c,
                                              const RepairingSet& r,
                                              std::uint64_t seed,
                                              int max_iterations) {
  if (!is_circular_conflict_free(c))
    throw std::invalid_argument("repair_one: constraint is not circular conflict free");
  ValidationResult vr = validate_repairing_set(r, c);
  if (!vr.ok) {
    std::string msg = "repair_one: invalid repairing set";
    for (const auto& w : vr.reasons) msg += "; " + w;
    throw std::invalid_argument(msg);
  }

  std::mt19937_64 rng(seed);
  RepairTrace trace;
  trace.seed = seed;
  CondPtr cond = uanf_to_condition(c);
  TypedGraph cur = g;
  int iteration = 0;

  auto draw = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };

  while (!graph_satisfies(cur, cond)) {
    if (++iteration > max_iterations)
      throw std::runtime_error("repair_one: iteration cap exceeded");
    int km = kmax(cur, c);
    auto p_set = potentially_increasing_occurrences(cur, c, km);
    if (p_set.empty())
      throw std::runtime_error("repair_one: no potentially increasing occurrence");
    const Morphism& p = p_set[draw(p_set.size())];
    int branch = static_cast<int>(draw(2));
    const RepairingSequence* seq = pick_sequence(r, km + 2, km + 3, branch);
    if (!seq) throw std::runtime_error("repair_one: no applicable sequence");
    Transformation t = apply_sequence_at(*seq, p, cur);
    TypedGraph h = t.after;

    TraceEntry e;
    e.iteration = iteration;
    e.inner = false;
    e.layer = km;
    e.occurrence = morphism_key(p);
    e.branch = branch;
    e.sequence_target = seq->target;
    e.nv = nv_snapshot(h, c);
    trace.entries.push_back(std::move(e));

    auto pending = collect_pending(t, c, km);
    while (!graph_satisfies_up_to_layer(h, c, km)) {
      if (++iteration > max_iterations)
        throw std::runtime_error("repair_one: iteration cap exceeded");
      if (pending.empty())
        throw std::runtime_error("repair_one: inner loop has no candidate");
      std::size_t pick = draw(pending.size());
      Pending chosen = pending[pick];
      int branch2 = static_cast<int>(draw(2));
      const RepairingSequence* seq2 =
          pick_sequence(r, chosen.layer, chosen.layer + 1, branch2);
      if (!seq2) throw std::runtime_error("repair_one: no applicable sequence");
      Transformation t2 = apply_sequence_at(*seq2, chosen.occ, h);

      TraceEntry e2;
      e2.iteration = iteration;
      e2.inner = true;
      e2.layer = chosen.layer;
      e2.occurrence = morphism_key(chosen.occ);
      e2.branch = branch2;
      e2.sequence_target = seq2->target;
      e2.nv = nv_snapshot(t2.after, c);
      trace.entries.push_back(std::move(e2));

      auto next = collect_pending(t2, c, km);
      std::set<std::string> have;
      for (const auto& pe : next)
        have.insert(std::to_string(pe.layer) + "|" + morphism_key(pe.occ));
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (i == pick) continue;
        Morphism moved = compose_track(pending[i].occ, t2.track);
        if (!moved.is_total()) continue;
        std::string key =
            std::to_string(pending[i].layer) + "|" + morphism_key(moved);
        if (have.count(key)) continue;
        have.insert(key);
        next.push_back({pending[i].layer, std::move(moved)});
      }
      pending = std::move(next);
      h = t2.after;
    }
    cur = h;
  }
  return {cur, trace};
}

std::pair<TypedGraph, RepairTrace> repair_set(
    const TypedGraph& g, const std::vector<UANF>& cs,
    const std::vector<RepairingSet>& rs, std::uint64_t seed,
    int max_iterations, const std::vector<std::string>& names) {
  ValidationResult vr = validate_for_set(rs, cs);
  if (!vr.ok) {
    std::string msg = "repair_set: invalid repairing sets";
    for (const auto& w : vr.reasons) msg += "; " + w;
    throw std::invalid_argument(msg);
  }
  ConflictGraph cg = conflict_graph_of_set(cs, rs, names);
  TopoResult topo = topological_ordering(cg);
  if (!topo.ok) {
    std::string msg = "repair_set: cyclic constraint conflict graph:";
    for (const auto& lbl : topo.cycle) msg += " " + lbl;
    throw std::runtime_error(msg);
  }
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < cg.nodes.size(); ++i) index_of[cg.nodes[i]] = i;

  RepairTrace trace;
  trace.seed = seed;
  TypedGraph cur = g;
  std::vector<std::size_t> done;
  for (std::size_t pos = 0; pos < topo.order.size(); ++pos) {
    std::size_t i = index_of.at(topo.order[pos]);
    auto [h, tr] = repair_one(cur, cs[i], rs[i], seed + 1000003u * pos,
                              max_iterations);
    cur = std::move(h);
    for (auto& e : tr.entries) trace.entries.push_back(std::move(e));
    for (std::size_t d : done)
      if (!graph_satisfies(cur, uanf_to_condition(cs[d])))
        throw std::runtime_error(
            "repair_set: previously repaired constraint violated");
    done.push_back(i);
  }
  return {cur, trace};
}

}  // namespace gr
