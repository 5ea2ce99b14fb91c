#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stimg/common.hpp"

namespace stimg::setdyn {

// One element of the state space: a named core node, or position n >= 0 on
// shift ray i.
struct Node {
  int ray = -1;        // -1 marks a core node
  long long pos = 0;   // ray position; unused for core nodes
  std::string label;   // core label; empty for ray nodes

  static Node core(std::string l) { return Node{-1, 0, std::move(l)}; }
  static Node ray_at(int ray, long long pos) { return Node{ray, pos, {}}; }
  bool is_core() const { return ray < 0; }

  friend auto operator<=>(const Node&, const Node&) = default;
};

// "core:a" or "ray:i:n"
std::string to_string(const Node& n);

// Finitely presented self-map of an infinite set: finitely many core nodes,
// finitely many shift rays, finitely many overriding edges. A ray node
// without an override moves one step up its ray; core nodes have no default
// rule, so each must appear as an override source.
class CofiniteSelfMap {
 public:
  CofiniteSelfMap(std::vector<std::string> core_labels, int ray_count,
                  std::map<Node, Node> overrides);

  const std::set<std::string>& core_labels() const { return core_labels_; }
  int ray_count() const { return ray_count_; }
  const std::map<Node, Node>& overrides() const { return overrides_; }

  bool valid_node(const Node& n) const;

  // largest ray position appearing in any override source or target; -1 when
  // no override touches a ray
  long long max_override_coord() const { return max_coord_; }

 private:
  std::set<std::string> core_labels_;
  int ray_count_ = 0;
  std::map<Node, Node> overrides_;
  long long max_coord_ = -1;
};

Node apply(const CofiniteSelfMap& spec, const Node& n);

// The full fiber of n: the un-overridden ray predecessor plus every override
// source mapping onto n. Always finite.
std::vector<Node> preimages(const CofiniteSelfMap& spec, const Node& n);

// Exact E^k = X - f^k(X), as a sorted vector. Finite for every k.
std::vector<Node> e_set(const CofiniteSelfMap& spec, int k);

enum class OrbitVerdict { FiniteTree, ContainsCycle, UnboundedPath };

struct BackwardOrbit {
  Node root;
  std::vector<std::pair<Node, Node>> edges;  // (child, parent) with f(child)=parent
  OrbitVerdict verdict = OrbitVerdict::FiniteTree;
  int depth = 0;  // longest path length when FiniteTree
};

// Exhaustive reverse search from `node`. Throws cap_error when depth_cap is
// reached without a verdict.
BackwardOrbit backward_orbit(const CofiniteSelfMap& spec, const Node& node, int depth_cap);

struct StabilityResult {
  bool stable = false;
  int K = 0;                    // stabilization index when stable
  std::vector<Node> e_K;        // E^K when stable
  std::optional<Node> witness;  // instability witness e in E otherwise
};

// Total decision procedure for this class: either the chain of e-sets becomes
// constant within the class bound, or some e in E has its whole forward orbit
// inside E^infinity.
StabilityResult is_stable(const CofiniteSelfMap& spec);

struct Lemma1Witness {
  Node e;
  int M = 1;  // least threshold: the fiber of f^k(e) is {f^{k-1}(e)} for all k >= M
  std::vector<Node> orbit_prefix;
};

// Requires an unstable spec.
Lemma1Witness lemma1_witness(const CofiniteSelfMap& spec, int prefix_len = 16);

// Independent approximation: materializes ray positions < n_max, iterates
// images as literal finite sets, and reports X - f^k(X) restricted to the
// region positions < n_max - k_max which truncation cannot disturb.
// result[k-1] is the k-th set. Refuses when n_max is too small.
std::vector<std::vector<Node>> truncation_oracle(const CofiniteSelfMap& spec, int k_max,
                                                 long long n_max);

// Bound by which the e-set chain of a stable spec must have settled.
int stability_bound(const CofiniteSelfMap& spec);

}  // namespace stimg::setdyn
