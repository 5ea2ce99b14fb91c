#pragma once

#include "stimg/multipoly.hpp"

namespace stimg {

// Polynomial self-map of the plane: an ordered pair of polynomials in a
// two-variable ring.
class PolyMap {
 public:
  PolyMap(MultiPoly p, MultiPoly q);

  const MultiPoly& p() const { return p_; }
  const MultiPoly& q() const { return q_; }
  const Ring& ring() const { return p_.ring(); }

  Point apply(const Point& v) const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  MultiPoly p_;
  MultiPoly q_;
};

// Determinant of the 2x2 matrix of partial derivatives.
MultiPoly jacobian_det(const PolyMap& f);

// f after g, exact composition.
PolyMap compose(const PolyMap& f, const PolyMap& g, int degree_cap = kDefaultDegreeCap);

}  // namespace stimg
