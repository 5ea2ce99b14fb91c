#pragma once

#include <vector>

#include "stimg/multipoly.hpp"

namespace stimg {

// Monic gcd of two effectively univariate polynomials over Q (at most one
// variable present in each, and the same one). gcd(p, 0) is monic(p).
MultiPoly gcd_univariate(const MultiPoly& a, const MultiPoly& b);

// p / gcd(p, p'), made monic: same roots, all simple. Univariate, nonzero.
MultiPoly squarefree_part(const MultiPoly& p);

// Sylvester resultant eliminating `var`, rows of `a` first. Result lives in
// the same ring with `var` eliminated. If one input has degree zero in `var`
// the usual power convention applies; `var` absent from both is an error.
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var,
                    int degree_cap = kDefaultDegreeCap);
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var,
                    int degree_cap = kDefaultDegreeCap);

// Reference path: Sylvester matrix + fraction-free determinant. Same value as
// resultant(); kept callable so the two routes can be cross-checked.
MultiPoly resultant_via_determinant(const MultiPoly& a, const MultiPoly& b, int var,
                                    int degree_cap = kDefaultDegreeCap);

// Fraction-free (Bareiss) determinant of a square polynomial matrix.
MultiPoly determinant(std::vector<std::vector<MultiPoly>> m);

// Exact quotient; throws if `den` does not divide `num`.
MultiPoly exact_divide(const MultiPoly& num, const MultiPoly& den);

struct RootSearch {
  std::vector<Rational> roots;  // distinct, sorted
  bool complete = true;         // false when the divisor budget ran out
};

// All rational roots of a univariate polynomial (rational root theorem over
// the integerized coefficients). Capped divisor enumeration with a budget.
RootSearch rational_roots(const MultiPoly& p, long long budget = kDefaultRootBudget);

}  // namespace stimg
