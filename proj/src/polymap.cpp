#include "stimg/polymap.hpp"

#include <array>

namespace stimg {

PolyMap::PolyMap(MultiPoly p, MultiPoly q) : p_(std::move(p)), q_(std::move(q)) {
  if (!same_ring(p_.ring(), q_.ring())) throw input_error("map components in different rings");
  if (p_.nvars() != 2) throw input_error("plane map needs a two-variable ring");
}

Point PolyMap::apply(const Point& v) const {
  std::array<Rational, 2> pt{v.x, v.y};
  return Point{evaluate(p_, pt), evaluate(q_, pt)};
}

MultiPoly jacobian_det(const PolyMap& f) {
  MultiPoly px = partial_derivative(f.p(), 0);
  MultiPoly py = partial_derivative(f.p(), 1);
  MultiPoly qx = partial_derivative(f.q(), 0);
  MultiPoly qy = partial_derivative(f.q(), 1);
  return px * qy - py * qx;
}

PolyMap compose(const PolyMap& f, const PolyMap& g, int degree_cap) {
  if (!same_ring(f.ring(), g.ring())) throw input_error("ring mismatch in composition");
  std::vector<MultiPoly> bindings{g.p(), g.q()};
  return PolyMap(substitute(f.p(), bindings, degree_cap),
                 substitute(f.q(), bindings, degree_cap));
}

}  // namespace stimg
