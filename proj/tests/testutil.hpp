#pragma once

#include <random>
#include <vector>

#include "stimg/imagedyn.hpp"
#include "stimg/parser.hpp"
#include "stimg/polyalg.hpp"
#include "stimg/setdyn.hpp"

namespace testutil {

using namespace stimg;

inline Ring ring_xy() {
  static Ring r = make_ring({"x", "y"});
  return r;
}

inline MultiPoly poly(const std::string& text, Ring ring = ring_xy()) {
  return parse_poly(SourceText{text, "<test>"}, ring);
}

inline PolyMap map(const std::string& text) {
  return parse_map(SourceText{text, "<test>"});
}

// the worked example map: image is the plane minus the origin
inline PolyMap example6() {
  return map("f(x,y) = (x - 2*(x*y+1) - y*(x*y+1)^2, -1 - y*(x*y+1))");
}

inline PolyMap triangular() { return map("f(x,y) = (x, y + x^2)"); }
inline PolyMap identity_map() { return map("f(x,y) = (x, y)"); }
inline PolyMap swap_map() { return map("f(x,y) = (y, x)"); }

inline Point pt(long a, long b) { return Point{Rational(a), Rational(b)}; }
inline Point pt(Rational a, Rational b) { return Point{std::move(a), std::move(b)}; }

// ----- seeded random values -----

struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned long long seed) : g(seed) {}
  long pick(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(g() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

inline Rational random_rational(Rng& r, long num_bound = 9, long den_bound = 5) {
  return Rational(r.pick(-num_bound, num_bound), r.pick(1, den_bound));
}

inline Rational random_nonzero_rational(Rng& r, long num_bound = 9, long den_bound = 5) {
  Rational v = random_rational(r, num_bound, den_bound);
  while (v.is_zero()) v = random_rational(r, num_bound, den_bound);
  return v;
}

inline MultiPoly random_poly(Rng& r, int max_deg = 3, int max_terms = 5,
                             Ring ring = ring_xy()) {
  MultiPoly acc = MultiPoly::zero(ring);
  int terms = static_cast<int>(r.pick(0, max_terms));
  for (int t = 0; t < terms; ++t) {
    Monomial m{std::vector<int>(ring->size(), 0)};
    int budget = max_deg;
    for (size_t v = 0; v < ring->size(); ++v) {
      int e = static_cast<int>(r.pick(0, budget));
      m.exps[v] = e;
      budget -= e;
    }
    MultiPoly::TermMap tm;
    tm.emplace(std::move(m), random_rational(r));
    acc += MultiPoly::from_terms(ring, std::move(tm));
  }
  return acc;
}

inline MultiPoly random_univariate(Rng& r, int max_deg = 6, Ring ring = ring_xy()) {
  MultiPoly acc = MultiPoly::zero(ring);
  int d = static_cast<int>(r.pick(0, max_deg));
  for (int e = 0; e <= d; ++e) {
    if (e < d && r.pick(0, 2) == 0) continue;  // sparse
    Monomial m{std::vector<int>(ring->size(), 0)};
    m.exps[0] = e;
    MultiPoly::TermMap tm;
    tm.emplace(std::move(m), e == d ? random_nonzero_rational(r) : random_rational(r));
    acc += MultiPoly::from_terms(ring, std::move(tm));
  }
  return acc;
}

inline PolyMap random_small_map(Rng& r, int max_deg = 2) {
  Ring ring = ring_xy();
  while (true) {
    MultiPoly p = random_poly(r, max_deg, 4, ring);
    MultiPoly q = random_poly(r, max_deg, 4, ring);
    if (p.is_constant() && q.is_constant()) continue;
    return PolyMap(std::move(p), std::move(q));
  }
}

// formal partial derivative computed along an independent route:
// embed into (x, y, h), shift the variable by h, divide the difference by h
// exactly, then set h to zero
inline MultiPoly shift_difference_derivative(const MultiPoly& p, int var) {
  Ring r3 = make_ring({"x", "y", "h"});
  MultiPoly p3 = reringed(p, r3);
  std::vector<MultiPoly> shift;
  for (int v = 0; v < 3; ++v) shift.push_back(MultiPoly::variable(r3, v));
  shift[var] = shift[var] + MultiPoly::variable(r3, 2);
  MultiPoly diff = substitute(p3, shift, 4 * kDefaultDegreeCap) - p3;
  MultiPoly quot = exact_divide(diff, MultiPoly::variable(r3, 2));
  std::vector<MultiPoly> at_zero;
  Ring r2 = p.ring();
  at_zero.push_back(MultiPoly::variable(r2, 0));
  at_zero.push_back(MultiPoly::variable(r2, 1));
  at_zero.push_back(MultiPoly::zero(r2));
  return substitute(quot, at_zero, 4 * kDefaultDegreeCap);
}

// ----- seeded random self-map specs -----
// parameters: rays <= 4, cores <= 6, overrides <= 8, coordinates <= 12

inline setdyn::CofiniteSelfMap random_spec(unsigned long long seed) {
  Rng r(seed);
  int rays = static_cast<int>(r.pick(0, 4));
  int cores = static_cast<int>(r.pick(rays == 0 ? 1 : 0, 6));
  std::vector<std::string> labels;
  for (int i = 0; i < cores; ++i) labels.push_back("c" + std::to_string(i));

  auto random_node = [&]() {
    if (cores > 0 && (rays == 0 || r.pick(0, 1) == 0))
      return setdyn::Node::core(labels[r.pick(0, cores - 1)]);
    return setdyn::Node::ray_at(static_cast<int>(r.pick(0, rays - 1)), r.pick(0, 12));
  };

  std::map<setdyn::Node, setdyn::Node> overrides;
  for (const auto& l : labels) overrides.emplace(setdyn::Node::core(l), random_node());
  int extra = static_cast<int>(r.pick(0, 8));
  for (int i = 0; i < extra && rays > 0; ++i) {
    setdyn::Node src = setdyn::Node::ray_at(static_cast<int>(r.pick(0, rays - 1)), r.pick(0, 12));
    overrides.emplace(src, random_node());  // keep the first rule on collision
  }
  return setdyn::CofiniteSelfMap(std::move(labels), rays, std::move(overrides));
}

}  // namespace testutil
