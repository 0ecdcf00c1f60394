#include "grafrepair/consistency.hpp"

#include <set>
#include <stdexcept>

#include "grafrepair/acsynth.hpp"

namespace gr {

namespace {

// Partial composite track . p for p: C -> G and the track morphism G -> H.
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
  for (const auto& [a, b] : m.node_map) s += std::to_string(a) + ">" + std::to_string(b) + ";";
  s += "e";
  for (const auto& [a, b] : m.edge_map) s += std::to_string(a) + ">" + std::to_string(b) + ";";
  return s;
}

// Keys of all total composites track . p over occurrences of pat in G.
std::set<std::string> tracked_image_keys(const TypedGraph& pat,
                                         const Transformation& t) {
  std::set<std::string> keys;
  for (const auto& p : enumerate_monomorphisms(pat, t.before)) {
    Morphism tp = compose_track(p, t.track);
    if (tp.is_total()) keys.insert(morphism_key(tp));
  }
  return keys;
}

CondPtr exists_into(const TypedGraph& base, const TypedGraph& cp) {
  return make_exists(inclusion_morphism(base, cp), make_true(cp));
}

bool leading_trivial(const UANF& c) {
  return c.nlvl() == 0 || c.graph(1) == c.graph(0);
}

long long violation_count(const TypedGraph& g, const UANF& c) {
  CondPtr d = subcondition_at_layer(c, 1);
  long long n = 0;
  for (const auto& p : enumerate_monomorphisms(c.graph(1), g))
    if (!satisfies(p, d)) ++n;
  return n;
}

}  // namespace

bool is_preserving(const Transformation& t, const UANF& c) {
  CondPtr cc = uanf_to_condition(c);
  return !graph_satisfies(t.before, cc) || graph_satisfies(t.after, cc);
}

bool is_guaranteeing(const Transformation& t, const UANF& c) {
  return graph_satisfies(t.after, uanf_to_condition(c));
}

bool is_maintaining(const Transformation& t, const UANF& c) {
  for (int j = -1; j < c.nlvl(); ++j)
    if (!(number_of_violations(t.after, c, j) <=
          number_of_violations(t.before, c, j)))
      return false;
  return true;
}

bool is_increasing(const Transformation& t, const UANF& c) {
  if (graph_satisfies(t.before, uanf_to_condition(c))) return false;
  if (!is_maintaining(t, c)) return false;
  int km = kmax(t.before, c);
  return number_of_violations(t.after, c, km + 1) <
         number_of_violations(t.before, c, km + 1);
}

bool is_direct_maintaining(const Transformation& t, const UANF& c) {
  const TypedGraph& g = t.before;
  const TypedGraph& h = t.after;
  int n = c.nlvl();
  CondPtr cc = uanf_to_condition(c);
  if (graph_satisfies(g, cc)) return graph_satisfies(h, cc);

  int km = kmax(g, c);
  const TypedGraph& ck2 = c.graph(km + 2);
  bool e_false = (km + 2 == n) && !c.terminal_true;

  // (1) No witness destroyed by deletion.
  if (!e_false) {
    auto igs = intermediate_graphs(ck2, c.graph(km + 3));
    for (const auto& p : enumerate_monomorphisms(ck2, g)) {
      Morphism tp = compose_track(p, t.track);
      if (!tp.is_total()) continue;
      for (const auto& cp : igs) {
        CondPtr wit = exists_into(ck2, cp);
        if (satisfies(p, wit) && !satisfies(tp, wit)) return false;
      }
    }
  }

  // (2) No violating occurrence inserted.
  CondPtr d2 =
      (km + 2 >= n)
          ? (e_false ? make_false(ck2) : make_true(ck2))
          : CondPtr(make_exists(c.inclusion(km + 2), make_true(c.graph(km + 3))));
  {
    auto seen = tracked_image_keys(ck2, t);
    for (const auto& pp : enumerate_monomorphisms(ck2, h))
      if (!seen.count(morphism_key(pp)) && !satisfies(pp, d2)) return false;
  }

  // (3) No layer reduction by insertion of a universally bound occurrence.
  for (int i = 1; i <= km; i += 2) {
    auto seen = tracked_image_keys(c.graph(i), t);
    for (const auto& pp : enumerate_monomorphisms(c.graph(i), h))
      if (!seen.count(morphism_key(pp))) return false;
  }

  // (4) No layer reduction by deletion of an existentially bound occurrence.
  for (int i = 2; i <= km + 1; i += 2)
    for (const auto& p : enumerate_monomorphisms(c.graph(i), g))
      if (!compose_track(p, t.track).is_total()) return false;

  return true;
}

bool is_direct_increasing(const Transformation& t, const UANF& c) {
  const TypedGraph& g = t.before;
  int n = c.nlvl();
  if (graph_satisfies(g, uanf_to_condition(c))) return false;
  if (!is_direct_maintaining(t, c)) return false;

  int km = kmax(g, c);
  const TypedGraph& ck2 = c.graph(km + 2);
  bool e_false = (km + 2 == n) && !c.terminal_true;

  if (e_false) {
    for (const auto& p : enumerate_monomorphisms(ck2, g))
      if (!compose_track(p, t.track).is_total()) return true;
    return false;
  }
  auto igs = intermediate_graphs(ck2, c.graph(km + 3));
  for (const auto& p : enumerate_monomorphisms(ck2, g)) {
    Morphism tp = compose_track(p, t.track);
    for (const auto& cp : igs) {
      CondPtr wit = exists_into(ck2, cp);
      if (satisfies(p, wit)) continue;
      if (!tp.is_total() || satisfies(tp, wit)) return true;
    }
  }
  return false;
}

bool is_sustaining(const Transformation& t, const UANF& c) {
  if (leading_trivial(c)) return is_preserving(t, c);
  return violation_count(t.before, c) >= violation_count(t.after, c);
}

bool is_improving(const Transformation& t, const UANF& c) {
  if (leading_trivial(c)) return is_guaranteeing(t, c);
  return violation_count(t.before, c) > violation_count(t.after, c);
}

bool is_direct_sustaining(const Transformation& t, const UANF& c) {
  if (leading_trivial(c)) return is_preserving(t, c);
  const TypedGraph& c1 = c.graph(1);
  CondPtr d = subcondition_at_layer(c, 1);
  for (const auto& p : enumerate_monomorphisms(c1, t.before)) {
    Morphism tp = compose_track(p, t.track);
    if (satisfies(p, d) && tp.is_total() && !satisfies(tp, d)) return false;
  }
  auto seen = tracked_image_keys(c1, t);
  for (const auto& pp : enumerate_monomorphisms(c1, t.after))
    if (!seen.count(morphism_key(pp)) && !satisfies(pp, d)) return false;
  return true;
}

bool is_direct_improving(const Transformation& t, const UANF& c) {
  if (leading_trivial(c)) return is_guaranteeing(t, c);
  if (!is_direct_sustaining(t, c)) return false;
  const TypedGraph& c1 = c.graph(1);
  CondPtr d = subcondition_at_layer(c, 1);
  for (const auto& p : enumerate_monomorphisms(c1, t.before)) {
    if (satisfies(p, d)) continue;
    Morphism tp = compose_track(p, t.track);
    if (!tp.is_total() || satisfies(tp, d)) return true;
  }
  return false;
}

ConsistencyVerdict classify_transformation(const Transformation& t,
                                           const UANF& c) {
  ConsistencyVerdict v;
  v.preserving = is_preserving(t, c);
  v.guaranteeing = is_guaranteeing(t, c);
  v.maintaining = is_maintaining(t, c);
  v.increasing = is_increasing(t, c);
  v.direct_maintaining = is_direct_maintaining(t, c);
  v.direct_increasing = is_direct_increasing(t, c);
  v.sustaining = is_sustaining(t, c);
  v.improving = is_improving(t, c);
  v.direct_sustaining = is_direct_sustaining(t, c);
  v.direct_improving = is_direct_improving(t, c);
  return v;
}

namespace {

struct NewPart {
  std::set<int> nodes, edges;
};

NewPart minus(const TypedGraph& big, const TypedGraph& small) {
  NewPart d;
  for (const auto& [v, _] : big.nodes)
    if (!small.has_node(v)) d.nodes.insert(v);
  for (const auto& [e, _] : big.edges)
    if (!small.has_edge(e)) d.edges.insert(e);
  return d;
}

// Do the images (under l of a, r of b) intersect in the overlap graph?
bool images_intersect(const Morphism& l, const NewPart& a, const Morphism& r,
                      const NewPart& b) {
  std::set<int> ln, le;
  for (int v : a.nodes) ln.insert(l.node_map.at(v));
  for (int e : a.edges) le.insert(l.edge_map.at(e));
  for (int v : b.nodes)
    if (ln.count(r.node_map.at(v))) return true;
  for (int e : b.edges)
    if (le.count(r.edge_map.at(e))) return true;
  return false;
}

void check_layer_arg(const UANF& c, int k, const char* who) {
  if (k < -1 || k > c.nlvl() - 2 || (k % 2) == 0)
    throw std::out_of_range(std::string(who) + ": k must be odd and in range");
}

}  // namespace

bool is_basic_maintaining_at_layer(const PlainRule& rho, const UANF& c, int k) {
  check_layer_arg(c, k, "is_basic_maintaining_at_layer");
  int n = c.nlvl();
  NewPart del = minus(rho.lhs, rho.interface);
  NewPart ins = minus(rho.rhs, rho.interface);

  // (1) The rule must not destroy parts of universally bound graphs
  // already reached up to layer k+1.
  for (int j = 2; j <= k + 1; j += 2) {
    NewPart fresh = minus(c.graph(j), c.graph(j - 1));
    for (const auto& o : enumerate_overlaps(rho.lhs, c.graph(j)))
      if (images_intersect(o.left, del, o.right, fresh) &&
          plain_applicable(rho, o.left))
        return false;
  }
  // (2) The rule must not insert parts of universally bound graphs up to
  // layer k+2.
  PlainRule rev = invert_plain(rho);
  for (int j = 1; j <= std::min(k + 2, n); j += 2) {
    NewPart fresh = minus(c.graph(j), c.graph(j - 1));
    for (const auto& o : enumerate_overlaps(rho.rhs, c.graph(j)))
      if (images_intersect(o.left, ins, o.right, fresh) &&
          plain_applicable(rev, o.left))
        return false;
  }
  // (3) Below the top layer, the rule must not touch the new part of C_{k+3}.
  if (k < n - 2) {
    NewPart fresh = minus(c.graph(k + 3), c.graph(k + 2));
    NewPart touched;
    touched.nodes = del.nodes;
    touched.edges = del.edges;
    for (const auto& o : enumerate_overlaps(rho.lhs, c.graph(k + 3)))
      if (images_intersect(o.left, touched, o.right, fresh)) return false;
  }
  return true;
}

BasicClassification classify_basic_increasing(const PlainRule& rho,
                                              const UANF& c, int k) {
  check_layer_arg(c, k, "classify_basic_increasing");
  BasicClassification r;
  r.layer = k;
  if (!is_basic_maintaining_at_layer(rho, c, k)) return r;
  int n = c.nlvl();
  const TypedGraph& ck2 = c.graph(k + 2);
  std::vector<TypedGraph> igs;
  if (k < n - 2) igs = intermediate_graphs(ck2, c.graph(k + 3));
  for (const auto& p : enumerate_monomorphisms(ck2, rho.lhs)) {
    bool deletes = false;
    for (const auto& [x, lx] : p.node_map)
      if (!rho.interface.has_node(lx)) deletes = true;
    for (const auto& [x, le] : p.edge_map)
      if (!rho.interface.has_edge(le)) deletes = true;
    if (deletes) {
      r.kind = BasicClassification::Kind::Deleting;
      r.occurrence = p;
      return r;
    }
    Morphism q = p;  // preserved ids carry the occurrence into the rhs
    q.cod = rho.rhs;
    for (const auto& cp : igs) {
      CondPtr wit = exists_into(ck2, cp);
      if (!satisfies(p, wit) && satisfies(q, wit)) {
        r.kind = BasicClassification::Kind::Inserting;
        r.occurrence = p;
        r.target = cp;
        return r;
      }
    }
  }
  return r;
}

namespace {

void flatten_conjuncts(const CondPtr& c, std::vector<CondPtr>& out) {
  if (c->kind == CKind::And) {
    for (const auto& s : c->subs) flatten_conjuncts(s, out);
  } else if (c->kind != CKind::True) {
    out.push_back(c);
  }
}

}  // namespace

RuleVerdict is_rule_maintaining_at_layer(const Rule& rule, const UANF& c,
                                         int k, int bound) {
  check_layer_arg(c, k, "is_rule_maintaining_at_layer");
  RuleVerdict v;
  if (rule.ac && rule.ac->kind == CKind::False) {
    v.kind = RuleVerdict::Kind::Proved;  // never applicable
    return v;
  }
  if (is_basic_maintaining_at_layer(rule.plain, c, k)) {
    v.kind = RuleVerdict::Kind::Proved;
    return v;
  }
  // Proved when the application condition subsumes the synthesized
  // maintaining condition for this layer.
  {
    Rule bare = rule_without_ac(rule.plain);
    CondPtr synth = maintaining_ac_at_layer(bare, c, k).ac;
    std::vector<CondPtr> need, have;
    flatten_conjuncts(synth, need);
    if (rule.ac) flatten_conjuncts(rule.ac, have);
    bool all = !need.empty();
    for (const auto& nd : need) {
      bool found = false;
      for (const auto& hv : have)
        if (cond_equal(nd, hv)) found = true;
      if (!found) all = false;
    }
    if (all) {
      v.kind = RuleVerdict::Kind::Proved;
      return v;
    }
  }
  // Exhaustive search over small hosts with kmax == k.
  for (const auto& g : enumerate_hosts(rule.plain.lhs.tg, bound)) {
    if (kmax(g, c) != k) continue;
    for (const auto& m : enumerate_monomorphisms(rule.plain.lhs, g)) {
      if (!is_applicable(rule, m)) continue;
      Transformation t = apply(rule, m);
      ++v.tested;
      if (!is_maintaining(t, c)) {
        v.kind = RuleVerdict::Kind::Counterexample;
        v.counterexample = t;
        return v;
      }
    }
  }
  v.kind = RuleVerdict::Kind::FuzzPass;
  return v;
}

}  // namespace gr
