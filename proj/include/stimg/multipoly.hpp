#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stimg/common.hpp"
#include "stimg/rational.hpp"

namespace stimg {

// Ordered list of variable names; shared between all polynomials of a ring.
using Ring = std::shared_ptr<const std::vector<std::string>>;

Ring make_ring(std::vector<std::string> names);
bool same_ring(const Ring& a, const Ring& b);
int ring_index(const Ring& r, const std::string& name);  // -1 when absent

// Exponent vector, one entry per ring variable.
struct Monomial {
  std::vector<int> exps;
  int total_degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order with the later ring variable dominating ties,
// so for the ring (x, y) we have x < y. Fixed globally; purely presentational.
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Canonical form: no zero terms, one entry per monomial.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonoLess>;

  MultiPoly() = default;

  static MultiPoly zero(Ring ring);
  static MultiPoly constant(Ring ring, Rational c);
  static MultiPoly variable(Ring ring, int index);
  static MultiPoly from_terms(Ring ring, TermMap terms);

  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  int nvars() const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant(); zero gives 0

  int total_degree() const;    // -1 for the zero polynomial
  int degree_in(int var) const;  // -1 for the zero polynomial

  Rational coeff(const Monomial& m) const;
  // Coefficient of var^k as a polynomial of the same ring (var stripped out).
  MultiPoly coeff_in(int var, int k) const;
  MultiPoly leading_coeff_in(int var) const;

  // Variables that actually occur with positive exponent.
  std::vector<int> vars_present() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(const Rational& c) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  // Canonical graded-lex text form; defined with the parser.
  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

 private:
  Ring ring_;
  TermMap terms_;
};

// Product with an explicit degree cap on the inputs.
MultiPoly mul(const MultiPoly& a, const MultiPoly& b, int degree_cap);

// Nonnegative power; rejects results beyond the degree cap.
MultiPoly poly_pow(const MultiPoly& a, int e, int degree_cap = kDefaultDegreeCap);

// Exact evaluation; point length must match the ring.
Rational evaluate(const MultiPoly& p, std::span<const Rational> point);

// Simultaneous substitution: one binding per ring variable, all bindings in a
// common target ring. Exact composition.
MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& bindings,
                     int degree_cap = kDefaultDegreeCap);

MultiPoly partial_derivative(const MultiPoly& p, int var);
MultiPoly partial_derivative(const MultiPoly& p, const std::string& var);

// Re-express p in a ring containing (at least) all of p's variables by name.
MultiPoly reringed(const MultiPoly& p, const Ring& target);

}  // namespace stimg
