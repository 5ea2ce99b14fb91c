#include "stimg/rational.hpp"

namespace stimg {

Rational::Rational(long n, long d) {
  if (d == 0) throw input_error("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational::Rational(mpz_class n, mpz_class d) {
  if (sgn(d) == 0) throw input_error("rational with zero denominator");
  v_ = mpq_class(std::move(n), std::move(d));
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw input_error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

mpz_class height(const Rational& r) {
  mpz_class n = ::abs(r.numerator());
  mpz_class d = r.denominator();
  return n > d ? n : d;
}

mpz_class height(const Point& p) {
  mpz_class hx = height(p.x);
  mpz_class hy = height(p.y);
  return hx > hy ? hx : hy;
}

bool height_lex_less(const Point& a, const Point& b) {
  mpz_class ha = height(a);
  mpz_class hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

}  // namespace stimg
