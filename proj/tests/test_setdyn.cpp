#include <doctest.h>

#include <algorithm>

#include "testutil.hpp"

using namespace stimg;
using namespace stimg::setdyn;
using namespace testutil;

namespace {

CofiniteSelfMap pure_shift() { return CofiniteSelfMap({}, 1, {}); }

CofiniteSelfMap merge_spec() {
  std::map<Node, Node> ov{{Node::ray_at(1, 0), Node::ray_at(0, 1)}};
  return CofiniteSelfMap({}, 2, std::move(ov));
}

CofiniteSelfMap two_core() {
  std::map<Node, Node> ov{{Node::core("c1"), Node::core("c2")},
                          {Node::core("c2"), Node::core("c2")}};
  return CofiniteSelfMap({"c1", "c2"}, 0, std::move(ov));
}

CofiniteSelfMap three_ray_two_merges() {
  std::map<Node, Node> ov{{Node::ray_at(1, 0), Node::ray_at(0, 1)},
                          {Node::ray_at(2, 0), Node::ray_at(0, 4)}};
  return CofiniteSelfMap({}, 3, std::move(ov));
}

std::vector<Node> rays0(std::initializer_list<long long> ps) {
  std::vector<Node> v;
  for (long long p : ps) v.push_back(Node::ray_at(0, p));
  return v;
}

}  // namespace

TEST_CASE("apply follows overrides and the default shift") {
  CofiniteSelfMap shift = pure_shift();
  CHECK(apply(shift, Node::ray_at(0, 3)) == Node::ray_at(0, 4));

  std::map<Node, Node> ov{{Node::core("c"), Node::ray_at(0, 0)}};
  CofiniteSelfMap spec({"c"}, 1, std::move(ov));
  CHECK(apply(spec, Node::core("c")) == Node::ray_at(0, 0));

  CHECK(apply(merge_spec(), Node::ray_at(1, 0)) == Node::ray_at(0, 1));
  CHECK_THROWS_AS(apply(shift, Node::ray_at(3, 0)), input_error);
  CHECK_THROWS_AS(apply(shift, Node::core("missing")), input_error);
}

TEST_CASE("preimages are exact full fibers") {
  CofiniteSelfMap shift = pure_shift();
  CHECK(preimages(shift, Node::ray_at(0, 0)).empty());
  CHECK(preimages(shift, Node::ray_at(0, 5)) == rays0({4}));

  CofiniteSelfMap m = merge_spec();
  std::vector<Node> pre = preimages(m, Node::ray_at(0, 1));
  CHECK(pre == std::vector<Node>{Node::ray_at(0, 0), Node::ray_at(1, 0)});
  CHECK(preimages(m, Node::ray_at(1, 1)).empty());  // overridden away
}

TEST_CASE("e-sets of the standard examples") {
  CofiniteSelfMap shift = pure_shift();
  for (int k = 1; k <= 5; ++k) {
    std::vector<Node> expect;
    for (int p = 0; p < k; ++p) expect.push_back(Node::ray_at(0, p));
    CHECK(e_set(shift, k) == expect);
  }

  CofiniteSelfMap core2 = two_core();
  for (int k = 1; k <= 4; ++k)
    CHECK(e_set(core2, k) == std::vector<Node>{Node::core("c1")});

  CHECK(e_set(merge_spec(), 1) ==
        std::vector<Node>{Node::ray_at(0, 0), Node::ray_at(1, 0), Node::ray_at(1, 1)});
}

TEST_CASE("backward orbits") {
  BackwardOrbit bo = backward_orbit(pure_shift(), Node::ray_at(0, 2), 10);
  CHECK(bo.verdict == OrbitVerdict::FiniteTree);
  CHECK(bo.depth == 2);

  std::map<Node, Node> ov{{Node::core("c"), Node::core("c")}};
  CofiniteSelfMap loop({"c"}, 0, std::move(ov));
  CHECK(backward_orbit(loop, Node::core("c"), 10).verdict == OrbitVerdict::ContainsCycle);

  BackwardOrbit mo = backward_orbit(merge_spec(), Node::ray_at(0, 2), 10);
  CHECK(mo.verdict == OrbitVerdict::FiniteTree);
  CHECK(mo.depth == 2);
  CHECK(mo.edges.size() == 3);  // 0:1 <- {0:0, 1:0} below 0:2

  CHECK_THROWS_AS(backward_orbit(pure_shift(), Node::ray_at(0, 50), 3), cap_error);
}

TEST_CASE("stability decisions") {
  StabilityResult s = is_stable(two_core());
  CHECK(s.stable);
  CHECK(s.K == 1);
  CHECK(s.e_K == std::vector<Node>{Node::core("c1")});

  StabilityResult u = is_stable(pure_shift());
  CHECK_FALSE(u.stable);
  CHECK(*u.witness == Node::ray_at(0, 0));

  StabilityResult m = is_stable(merge_spec());
  CHECK_FALSE(m.stable);
  CHECK(*m.witness == Node::ray_at(0, 0));
}

TEST_CASE("lemma-1 witnesses with least thresholds") {
  Lemma1Witness ws = lemma1_witness(pure_shift());
  CHECK(ws.e == Node::ray_at(0, 0));
  CHECK(ws.M == 1);

  Lemma1Witness wm = lemma1_witness(merge_spec());
  CHECK(wm.e == Node::ray_at(0, 0));
  CHECK(wm.M == 2);

  Lemma1Witness w3 = lemma1_witness(three_ray_two_merges());
  CHECK(w3.e == Node::ray_at(0, 0));
  CHECK(w3.M == 5);

  CHECK_THROWS_AS(lemma1_witness(two_core()), input_error);
}

TEST_CASE("truncation oracle ground truth") {
  auto oracle = truncation_oracle(pure_shift(), 3, 20);
  CHECK(oracle[2] == rays0({0, 1, 2}));

  auto oc = truncation_oracle(two_core(), 3, 10);
  for (int k = 0; k < 3; ++k) CHECK(oc[k] == std::vector<Node>{Node::core("c1")});

  for (int k = 1; k <= 5; ++k) {
    auto om = truncation_oracle(merge_spec(), 5, 40);
    std::vector<Node> exact;
    for (const Node& n : e_set(merge_spec(), k))
      if (n.is_core() || n.pos < 35) exact.push_back(n);
    CHECK(om[k - 1] == exact);
  }

  CHECK_THROWS_AS(truncation_oracle(pure_shift(), 10, 9), input_error);
}

TEST_CASE("chain, sandwich and oracle agreement on random specs") {
  const int kSpecs = 120;
  const int kMax = 6;
  for (int seed = 0; seed < kSpecs; ++seed) {
    CofiniteSelfMap spec = random_spec(9000 + seed);
    const long long n_max = spec.max_override_coord() + 2 * kMax + 4;
    auto oracle = truncation_oracle(spec, kMax, n_max);
    const long long safe = n_max - kMax;

    std::vector<std::vector<Node>> chain;
    for (int k = 1; k <= kMax + 1; ++k) chain.push_back(e_set(spec, k));

    for (int k = 1; k <= kMax; ++k) {
      const auto& ek = chain[k - 1];
      const auto& ek1 = chain[k];
      // chain inclusion
      CHECK(std::includes(ek1.begin(), ek1.end(), ek.begin(), ek.end()));
      // sandwich: E^{k+1} subset of E^k union f(E^k)
      std::set<Node> allowed(ek.begin(), ek.end());
      for (const Node& n : ek) allowed.insert(apply(spec, n));
      for (const Node& n : ek1) CHECK(allowed.count(n) == 1);
      // finiteness is structural; guard against region blowups anyway
      CHECK(ek.size() <= 2000);
      // oracle agreement on the unaffected region
      std::vector<Node> restricted;
      for (const Node& n : ek)
        if (n.is_core() || n.pos < safe) restricted.push_back(n);
      CHECK(restricted == oracle[k - 1]);
    }
  }
}

TEST_CASE("stability dichotomy on random specs") {
  for (int seed = 0; seed < 60; ++seed) {
    CofiniteSelfMap spec = random_spec(1234 + seed);
    StabilityResult st = is_stable(spec);
    if (st.stable) {
      // the chain really is constant from K on
      std::vector<Node> base = e_set(spec, st.K);
      CHECK(base == st.e_K);
      for (int j = 1; j <= 4; ++j) CHECK(e_set(spec, st.K + j) == base);
    } else {
      Lemma1Witness w = lemma1_witness(spec, 20);
      // orbit distinct and fully omitted
      std::set<Node> seen;
      for (const Node& n : w.orbit_prefix) CHECK(seen.insert(n).second);
      int cap = stability_bound(spec) + 64;
      for (const Node& n : w.orbit_prefix)
        CHECK(backward_orbit(spec, n, cap).verdict == OrbitVerdict::FiniteTree);
      // unique preimages from M on
      Node cur = w.e;
      for (int k = 1; k <= 20; ++k) {
        Node nxt = apply(spec, cur);
        auto pre = preimages(spec, nxt);
        if (k >= w.M) {
          CHECK(pre.size() == 1);
          CHECK(pre[0] == cur);
        }
        cur = nxt;
      }
    }
  }
}

TEST_CASE("injective core permutations are surjective") {
  // the discrete shadow of injective-implies-surjective, on bijective specs
  std::map<Node, Node> ov{{Node::core("a"), Node::core("b")},
                          {Node::core("b"), Node::core("c")},
                          {Node::core("c"), Node::core("a")}};
  CofiniteSelfMap perm({"a", "b", "c"}, 0, std::move(ov));
  for (const auto& l : perm.core_labels())
    CHECK(preimages(perm, Node::core(l)).size() == 1);
  CHECK(e_set(perm, 1).empty());
  CHECK(is_stable(perm).stable);
}
