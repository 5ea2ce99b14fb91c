#include "stimg/setdyn.hpp"

#include <algorithm>

namespace stimg::setdyn {

std::string to_string(const Node& n) {
  if (n.is_core()) return "core:" + n.label;
  return "ray:" + std::to_string(n.ray) + ":" + std::to_string(n.pos);
}

CofiniteSelfMap::CofiniteSelfMap(std::vector<std::string> core_labels, int ray_count,
                                 std::map<Node, Node> overrides)
    : ray_count_(ray_count), overrides_(std::move(overrides)) {
  if (ray_count < 0) throw input_error("negative ray count");
  for (auto& l : core_labels) {
    if (l.empty()) throw input_error("empty core label");
    if (!core_labels_.insert(std::move(l)).second)
      throw input_error("duplicate core label");
  }
  if (core_labels_.empty() && ray_count_ == 0) throw input_error("empty state space");
  for (const auto& [src, dst] : overrides_) {
    if (!valid_node(src) || !valid_node(dst))
      throw input_error("override uses an invalid node");
    if (src.ray >= 0) max_coord_ = std::max(max_coord_, src.pos);
    if (dst.ray >= 0) max_coord_ = std::max(max_coord_, dst.pos);
  }
  for (const auto& l : core_labels_)
    if (!overrides_.count(Node::core(l)))
      throw input_error("core node " + l + " has no map rule");
}

bool CofiniteSelfMap::valid_node(const Node& n) const {
  if (n.is_core()) return core_labels_.count(n.label) > 0;
  return n.ray < ray_count_ && n.pos >= 0;
}

Node apply(const CofiniteSelfMap& spec, const Node& n) {
  if (!spec.valid_node(n)) throw input_error("invalid node " + to_string(n));
  auto it = spec.overrides().find(n);
  if (it != spec.overrides().end()) return it->second;
  return Node::ray_at(n.ray, n.pos + 1);
}

std::vector<Node> preimages(const CofiniteSelfMap& spec, const Node& n) {
  if (!spec.valid_node(n)) throw input_error("invalid node " + to_string(n));
  std::set<Node> out;
  if (!n.is_core() && n.pos >= 1) {
    Node below = Node::ray_at(n.ray, n.pos - 1);
    if (!spec.overrides().count(below)) out.insert(below);
  }
  for (const auto& [src, dst] : spec.overrides())
    if (dst == n) out.insert(src);
  return {out.begin(), out.end()};
}

std::vector<Node> e_set(const CofiniteSelfMap& spec, int k) {
  if (k < 1) throw input_error("e_set needs k >= 1");
  // Beyond max_override_coord + k every ray node has an untouched descending
  // chain of length k, so only this finite region can contribute.
  const long long limit = spec.max_override_coord() + k;
  std::vector<Node> region;
  for (const auto& l : spec.core_labels()) region.push_back(Node::core(l));
  for (int r = 0; r < spec.ray_count(); ++r)
    for (long long p = 0; p <= limit; ++p) region.push_back(Node::ray_at(r, p));

  std::vector<Node> out;
  for (const Node& x : region) {
    std::set<Node> frontier{x};
    for (int step = 0; step < k && !frontier.empty(); ++step) {
      std::set<Node> next;
      for (const Node& v : frontier)
        for (const Node& w : preimages(spec, v)) next.insert(w);
      frontier = std::move(next);
    }
    if (frontier.empty()) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BackwardOrbit backward_orbit(const CofiniteSelfMap& spec, const Node& node, int depth_cap) {
  if (depth_cap < 1) throw input_error("depth cap must be positive");
  if (!spec.valid_node(node)) throw input_error("invalid node " + to_string(node));
  BackwardOrbit out;
  out.root = node;
  std::set<Node> visited{node};
  std::set<Node> frontier{node};
  int depth = 0;
  while (!frontier.empty()) {
    std::set<Node> next;
    for (const Node& v : frontier) {
      for (const Node& w : preimages(spec, v)) {
        out.edges.emplace_back(w, v);
        if (visited.count(w)) {
          // a functional graph revisits a node only through a cycle
          out.verdict = OrbitVerdict::ContainsCycle;
          out.depth = depth;
          return out;
        }
        visited.insert(w);
        next.insert(w);
      }
    }
    if (next.empty()) break;
    ++depth;
    if (depth > depth_cap)
      throw cap_error("backward orbit of " + to_string(node) +
                      " unresolved within depth cap");
    frontier = std::move(next);
  }
  out.verdict = OrbitVerdict::FiniteTree;
  out.depth = depth;
  return out;
}

int stability_bound(const CofiniteSelfMap& spec) {
  long long span = 0;
  std::vector<long long> per_ray(spec.ray_count(), -1);
  for (const auto& [src, dst] : spec.overrides()) {
    if (src.ray >= 0) per_ray[src.ray] = std::max(per_ray[src.ray], src.pos);
    if (dst.ray >= 0) per_ray[dst.ray] = std::max(per_ray[dst.ray], dst.pos);
  }
  for (long long m : per_ray)
    if (m >= 0) span += m + 1;
  return static_cast<int>(spec.core_labels().size() + span + spec.ray_count() + 1);
}

namespace {

// Whole forward orbit of e inside E^infinity? Walks until a cycle shows up in
// some backward orbit or the orbit escapes past every override.
bool orbit_stays_omitted(const CofiniteSelfMap& spec, const Node& e, int depth_cap) {
  const long long maxc = spec.max_override_coord();
  std::set<Node> seen;
  Node cur = e;
  while (true) {
    if (!seen.insert(cur).second)
      throw error("internal: forward revisit without a backward cycle");
    BackwardOrbit bo = backward_orbit(spec, cur, depth_cap);
    if (bo.verdict != OrbitVerdict::FiniteTree) return false;
    Node next = apply(spec, cur);
    if (!next.is_core() && next.pos > maxc) {
      // escaped: from here on the orbit only shifts up the ray, and each tail
      // point adds one level on top of this backward tree
      BackwardOrbit tail = backward_orbit(spec, next, depth_cap);
      return tail.verdict == OrbitVerdict::FiniteTree;
    }
    cur = next;
  }
}

}  // namespace

StabilityResult is_stable(const CofiniteSelfMap& spec) {
  const int bound = stability_bound(spec);
  const int depth_cap = bound + 64;

  for (const Node& e : e_set(spec, 1)) {
    if (orbit_stays_omitted(spec, e, depth_cap)) {
      StabilityResult r;
      r.stable = false;
      r.witness = e;
      return r;
    }
  }

  std::vector<Node> prev = e_set(spec, 1);
  for (int k = 1; k <= bound; ++k) {
    std::vector<Node> next = e_set(spec, k + 1);
    if (prev == next) {
      StabilityResult r;
      r.stable = true;
      r.K = k;
      r.e_K = std::move(prev);
      return r;
    }
    prev = std::move(next);
  }
  throw error("internal: no witness and no stabilization within the class bound");
}

Lemma1Witness lemma1_witness(const CofiniteSelfMap& spec, int prefix_len) {
  StabilityResult st = is_stable(spec);
  if (st.stable) throw input_error("lemma-1 witness requested for a stable map");

  Lemma1Witness w;
  w.e = *st.witness;
  const long long maxc = spec.max_override_coord();

  // Last k at which f^k(e) has any preimage besides f^{k-1}(e). Ray nodes
  // past maxc+1 have exactly their ray predecessor, so the scan is finite.
  int last_bad = 0;
  Node cur = w.e;
  for (int k = 1;; ++k) {
    Node nxt = apply(spec, cur);
    std::vector<Node> pre = preimages(spec, nxt);
    if (!(pre.size() == 1 && pre[0] == cur)) last_bad = k;
    cur = nxt;
    if (!cur.is_core() && cur.pos > maxc + 1) break;
  }
  w.M = last_bad + 1;

  Node o = w.e;
  for (int i = 0; i < prefix_len; ++i) {
    w.orbit_prefix.push_back(o);
    o = apply(spec, o);
  }
  return w;
}

std::vector<std::vector<Node>> truncation_oracle(const CofiniteSelfMap& spec, int k_max,
                                                 long long n_max) {
  if (k_max < 1) throw input_error("k_max must be positive");
  if (n_max <= spec.max_override_coord() + k_max)
    throw input_error("n_max too small: must exceed every override coordinate plus k_max");

  std::set<Node> trunc;
  for (const auto& l : spec.core_labels()) trunc.insert(Node::core(l));
  for (int r = 0; r < spec.ray_count(); ++r)
    for (long long p = 0; p < n_max; ++p) trunc.insert(Node::ray_at(r, p));

  const long long safe = n_max - k_max;
  std::vector<std::vector<Node>> out;
  std::set<Node> image = trunc;
  for (int k = 1; k <= k_max; ++k) {
    std::set<Node> next;
    for (const Node& v : image)
      if (spec.valid_node(v)) next.insert(apply(spec, v));
    image = std::move(next);
    std::vector<Node> ek;
    for (const Node& v : trunc) {
      if (!v.is_core() && v.pos >= safe) continue;
      if (!image.count(v)) ek.push_back(v);
    }
    std::sort(ek.begin(), ek.end());
    out.push_back(std::move(ek));
  }
  return out;
}

}  // namespace stimg::setdyn
