#include "stimg/polyalg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <utility>

namespace stimg {
namespace {

constexpr int kNoCap = std::numeric_limits<int>::max() / 4;

// ----- dense univariate layer over Q -----

struct UPoly {
  std::vector<Rational> c;  // c[i] multiplies t^i
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
};

UPoly up_derivative(const UPoly& p) {
  UPoly d;
  for (int i = 1; i <= p.deg(); ++i) d.c.push_back(p.c[i] * Rational(i));
  d.trim();
  return d;
}

Rational up_eval(const UPoly& p, const Rational& t) {
  Rational acc(0);
  for (int i = p.deg(); i >= 0; --i) acc = acc * t + p.c[i];
  return acc;
}

std::pair<UPoly, UPoly> up_divmod(const UPoly& a, const UPoly& b) {
  if (b.zero()) throw input_error("univariate division by zero");
  UPoly r = a;
  r.trim();
  UPoly q;
  if (r.deg() >= b.deg()) q.c.assign(r.deg() - b.deg() + 1, Rational(0));
  while (!r.zero() && r.deg() >= b.deg()) {
    Rational f = r.c.back() / b.c.back();
    int shift = r.deg() - b.deg();
    q.c[shift] = f;
    for (int i = 0; i <= b.deg(); ++i) r.c[shift + i] -= f * b.c[i];
    r.trim();
  }
  q.trim();
  return {std::move(q), std::move(r)};
}

UPoly up_monic(UPoly p) {
  p.trim();
  if (p.zero()) return p;
  Rational lc = p.c.back();
  for (auto& x : p.c) x /= lc;
  return p;
}

std::vector<mpz_class> z_trim(std::vector<mpz_class> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

std::vector<mpz_class> z_primitive(std::vector<mpz_class> v) {
  v = z_trim(std::move(v));
  mpz_class cont(0);
  for (const auto& z : v) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), z.get_mpz_t());
  if (cont > 1)
    for (auto& z : v) z /= cont;
  return v;
}

// primitive integer image of a rational coefficient vector
std::vector<mpz_class> up_to_primitive_z(const UPoly& p) {
  mpz_class scale(1);
  for (const auto& x : p.c) {
    mpz_class d = x.denominator();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), d.get_mpz_t());
    scale = scale / g * d;
  }
  std::vector<mpz_class> v;
  v.reserve(p.c.size());
  for (const auto& x : p.c) v.push_back(x.numerator() * (scale / x.denominator()));
  return z_primitive(std::move(v));
}

// one pseudo-division pass; result has degree below deg(b)
std::vector<mpz_class> z_prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  int db = static_cast<int>(b.size()) - 1;
  const mpz_class lb = b.back();
  a = z_trim(std::move(a));
  while (static_cast<int>(a.size()) - 1 >= db) {
    int s = static_cast<int>(a.size()) - 1;
    mpz_class as = a.back();
    for (auto& z : a) z *= lb;
    for (int i = 0; i <= db; ++i) a[s - db + i] -= as * b[i];
    a = z_trim(std::move(a));
  }
  return a;
}

// primitive polynomial remainder sequence; result is monic over Q
UPoly up_gcd(const UPoly& a, const UPoly& b) {
  if (a.zero()) return up_monic(b);
  if (b.zero()) return up_monic(a);
  std::vector<mpz_class> A = up_to_primitive_z(a);
  std::vector<mpz_class> B = up_to_primitive_z(b);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    std::vector<mpz_class> R = z_primitive(z_prem(A, B));
    A = std::move(B);
    B = std::move(R);
  }
  UPoly g;
  g.c.reserve(A.size());
  for (auto& z : A) g.c.emplace_back(Rational(std::move(z), mpz_class(1)));
  return up_monic(std::move(g));
}

UPoly up_squarefree(const UPoly& p) {
  UPoly g = up_gcd(p, up_derivative(p));
  auto [q, r] = up_divmod(p, g);
  if (!r.zero()) throw error("internal: squarefree division not exact");
  return up_monic(std::move(q));
}

// ----- MultiPoly <-> UPoly bridges -----

// the single variable present; -1 when constant; throws on several variables
int univariate_var(const MultiPoly& p) {
  auto vars = p.vars_present();
  if (vars.size() > 1) throw input_error("multivariate input");
  return vars.empty() ? -1 : vars[0];
}

UPoly to_upoly(const MultiPoly& p, int var) {
  UPoly u;
  if (p.is_zero()) return u;
  int d = var < 0 ? 0 : p.degree_in(var);
  u.c.assign(d + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) u.c[var < 0 ? 0 : m.exps[var]] = c;
  u.trim();
  return u;
}

MultiPoly from_upoly(const Ring& ring, int var, const UPoly& u) {
  MultiPoly::TermMap terms;
  for (int i = 0; i <= u.deg(); ++i) {
    if (u.c[i].is_zero()) continue;
    Monomial m{std::vector<int>(ring->size(), 0)};
    if (var >= 0) m.exps[var] = i;
    terms.emplace(std::move(m), u.c[i]);
  }
  return MultiPoly::from_terms(ring, std::move(terms));
}

// shared-variable resolution for the univariate operations
int common_univariate_var(const MultiPoly& a, const MultiPoly& b) {
  if (!same_ring(a.ring(), b.ring())) throw input_error("ring mismatch");
  int va = univariate_var(a);
  int vb = univariate_var(b);
  if (va >= 0 && vb >= 0 && va != vb)
    throw input_error("univariate inputs in different variables");
  return va >= 0 ? va : vb;
}

// ----- determinants -----

Rational det_rational(std::vector<std::vector<Rational>> m) {
  const int n = static_cast<int>(m.size());
  int sign = 1;
  Rational det(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!m[i][k].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    det *= m[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      Rational f = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return sign < 0 ? -det : det;
}

// Sylvester matrix with rows of `a` first (deg b of them), then rows of `b`.
template <typename Entry, typename CoeffAt>
std::vector<std::vector<Entry>> sylvester_matrix(int da, int db, CoeffAt coeff_a,
                                                 CoeffAt coeff_b, Entry zero) {
  const int n = da + db;
  std::vector<std::vector<Entry>> m(n, std::vector<Entry>(n, zero));
  for (int r = 0; r < db; ++r)
    for (int i = 0; i <= da; ++i) m[r][r + i] = coeff_a(da - i);
  for (int r = 0; r < da; ++r)
    for (int i = 0; i <= db; ++i) m[db + r][r + i] = coeff_b(db - i);
  return m;
}

Rational numeric_resultant(const std::vector<Rational>& ac, const std::vector<Rational>& bc) {
  const int da = static_cast<int>(ac.size()) - 1;
  const int db = static_cast<int>(bc.size()) - 1;
  using CoeffFn = std::function<Rational(int)>;
  auto m = sylvester_matrix<Rational, CoeffFn>(
      da, db, [&](int k) { return ac[k]; }, [&](int k) { return bc[k]; }, Rational(0));
  return det_rational(std::move(m));
}

UPoly newton_interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<Rational> col;
  col.reserve(n);
  for (const auto& [t, v] : pts) col.push_back(v);
  std::vector<Rational> dd;
  dd.push_back(col[0]);
  for (int level = 1; level < n; ++level) {
    for (int i = 0; i + level < n; ++i)
      col[i] = (col[i + 1] - col[i]) / (pts[i + level].first - pts[i].first);
    dd.push_back(col[0]);
  }
  UPoly acc;
  acc.c = {dd[n - 1]};
  for (int i = n - 2; i >= 0; --i) {
    UPoly next;
    next.c.assign(acc.deg() + 2, Rational(0));
    for (int j = 0; j <= acc.deg(); ++j) {
      next.c[j + 1] += acc.c[j];
      next.c[j] -= pts[i].first * acc.c[j];
    }
    next.c[0] += dd[i];
    next.trim();
    acc = std::move(next);
  }
  return acc;
}

Rational eval_single_var(const MultiPoly& p, int var, const Rational& t) {
  // p uses at most `var`; Horner over the extracted coefficient vector
  return up_eval(to_upoly(p, var), t);
}

// resultant of two polynomials whose only variables are `var` and `w`,
// by specialization at nodes of w and exact interpolation
MultiPoly resultant_interp(const MultiPoly& a, const MultiPoly& b, int var, int w) {
  const int da = a.degree_in(var);
  const int db = b.degree_in(var);
  const int dwa = std::max(a.degree_in(w), 0);
  const int dwb = std::max(b.degree_in(w), 0);
  const long long bound = static_cast<long long>(db) * dwa + static_cast<long long>(da) * dwb;

  const MultiPoly lca = a.coeff_in(var, da);
  const MultiPoly lcb = b.coeff_in(var, db);

  std::vector<MultiPoly> bindings;
  const Ring& ring = a.ring();
  std::vector<std::pair<Rational, Rational>> pts;
  long long next = 0;
  while (static_cast<long long>(pts.size()) < bound + 1) {
    Rational t(static_cast<long>(next), 1);
    next = next > 0 ? -next : -next + 1;  // 0, 1, -1, 2, -2, ...
    if (eval_single_var(lca, w, t).is_zero()) continue;
    if (eval_single_var(lcb, w, t).is_zero()) continue;

    bindings.clear();
    for (int v = 0; v < a.nvars(); ++v)
      bindings.push_back(v == w ? MultiPoly::constant(ring, t)
                                : MultiPoly::variable(ring, v));
    MultiPoly at = substitute(a, bindings, kNoCap);
    MultiPoly bt = substitute(b, bindings, kNoCap);
    std::vector<Rational> ac(da + 1), bc(db + 1);
    for (int k = 0; k <= da; ++k) ac[k] = at.coeff_in(var, k).constant_value();
    for (int k = 0; k <= db; ++k) bc[k] = bt.coeff_in(var, k).constant_value();
    pts.emplace_back(t, numeric_resultant(ac, bc));
  }
  return from_upoly(ring, w, newton_interpolate(pts));
}

}  // namespace

MultiPoly exact_divide(const MultiPoly& num, const MultiPoly& den) {
  if (!same_ring(num.ring(), den.ring())) throw input_error("ring mismatch");
  if (den.is_zero()) throw input_error("division by zero polynomial");
  if (num.is_zero()) return MultiPoly::zero(num.ring());
  if (den.is_constant()) return num.scaled(Rational(1) / den.constant_value());

  MultiPoly r = num;
  MultiPoly q = MultiPoly::zero(num.ring());
  const auto& dlt = *den.terms().rbegin();
  while (!r.is_zero()) {
    const auto& rlt = *r.terms().rbegin();
    Monomial dm{std::vector<int>(rlt.first.exps.size(), 0)};
    for (size_t i = 0; i < dm.exps.size(); ++i) {
      int e = rlt.first.exps[i] - dlt.first.exps[i];
      if (e < 0) throw error("internal: inexact polynomial division");
      dm.exps[i] = e;
    }
    MultiPoly::TermMap tm;
    tm.emplace(std::move(dm), rlt.second / dlt.second);
    MultiPoly t = MultiPoly::from_terms(num.ring(), std::move(tm));
    q += t;
    r -= mul(t, den, kNoCap);
  }
  return q;
}

MultiPoly determinant(std::vector<std::vector<MultiPoly>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw input_error("empty matrix");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw input_error("matrix not square");
  const Ring ring = m[0][0].ring();

  int sign = 1;
  MultiPoly prev = MultiPoly::constant(ring, Rational(1));
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!m[i][k].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return MultiPoly::zero(ring);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        MultiPoly num = mul(m[i][j], m[k][k], kNoCap) - mul(m[i][k], m[k][j], kNoCap);
        m[i][j] = exact_divide(num, prev);
      }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

MultiPoly gcd_univariate(const MultiPoly& a, const MultiPoly& b) {
  int var = common_univariate_var(a, b);
  if (var < 0) {
    // both constant
    if (a.is_zero() && b.is_zero()) return MultiPoly::zero(a.ring());
    return MultiPoly::constant(a.ring(), Rational(1));
  }
  UPoly g = up_gcd(to_upoly(a, var), to_upoly(b, var));
  return from_upoly(a.ring(), var, g);
}

MultiPoly squarefree_part(const MultiPoly& p) {
  if (p.is_zero()) throw input_error("squarefree part of the zero polynomial");
  int var = univariate_var(p);
  if (var < 0) return MultiPoly::constant(p.ring(), Rational(1));
  return from_upoly(p.ring(), var, up_squarefree(to_upoly(p, var)));
}

namespace {

std::vector<mpz_class> divisors_of(const mpz_class& n_in, long long budget, long long& used,
                                   bool& complete) {
  mpz_class n = ::abs(n_in);
  std::vector<mpz_class> out;
  mpz_class d(1);
  for (; d * d <= n; ++d) {
    if (++used > budget) {
      complete = false;
      break;
    }
    if (n % d == 0) {
      out.push_back(d);
      mpz_class e = n / d;
      if (e != d) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RootSearch rational_roots(const MultiPoly& p, long long budget) {
  if (p.is_zero()) throw input_error("root search on the zero polynomial");
  int var = univariate_var(p);
  RootSearch result;
  if (var < 0) return result;  // nonzero constant: no roots

  UPoly u = to_upoly(p, var);
  std::set<Rational> roots;
  // strip t^v
  size_t low = 0;
  while (low < u.c.size() && u.c[low].is_zero()) ++low;
  if (low > 0) {
    roots.insert(Rational(0));
    u.c.erase(u.c.begin(), u.c.begin() + low);
  }
  if (u.deg() >= 1) {
    std::vector<mpz_class> z = up_to_primitive_z(u);
    long long used = 0;
    bool complete = true;
    auto dnum = divisors_of(z.front(), budget, used, complete);
    auto dden = divisors_of(z.back(), budget, used, complete);
    for (const auto& pn : dnum) {
      for (const auto& qd : dden) {
        if (++used > budget) {
          complete = false;
          break;
        }
        Rational cand(pn, qd);
        if (up_eval(u, cand).is_zero()) roots.insert(cand);
        if (up_eval(u, -cand).is_zero()) roots.insert(-cand);
      }
      if (!complete) break;
    }
    result.complete = complete;
  }
  result.roots.assign(roots.begin(), roots.end());
  return result;
}

MultiPoly resultant_via_determinant(const MultiPoly& a, const MultiPoly& b, int var,
                                    int degree_cap) {
  if (!same_ring(a.ring(), b.ring())) throw input_error("ring mismatch");
  if (var < 0 || var >= a.nvars()) throw input_error("unknown variable");
  if (a.is_zero() || b.is_zero()) return MultiPoly::zero(a.ring());
  int da = a.degree_in(var);
  int db = b.degree_in(var);
  if (da <= 0 && db <= 0) throw input_error("variable absent from both resultant inputs");
  if (a.total_degree() > degree_cap || b.total_degree() > degree_cap)
    throw cap_error("degree cap exceeded in resultant");
  if (da == 0) return poly_pow(a, db, kNoCap);
  if (db == 0) return poly_pow(b, da, kNoCap);

  std::vector<MultiPoly> ac(da + 1), bc(db + 1);
  for (int k = 0; k <= da; ++k) ac[k] = a.coeff_in(var, k);
  for (int k = 0; k <= db; ++k) bc[k] = b.coeff_in(var, k);
  using CoeffFn = std::function<MultiPoly(int)>;
  auto m = sylvester_matrix<MultiPoly, CoeffFn>(
      da, db, [&](int k) { return ac[k]; }, [&](int k) { return bc[k]; },
      MultiPoly::zero(a.ring()));
  return determinant(std::move(m));
}

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var, int degree_cap) {
  if (!same_ring(a.ring(), b.ring())) throw input_error("ring mismatch");
  if (var < 0 || var >= a.nvars()) throw input_error("unknown variable");
  if (a.is_zero() || b.is_zero()) return MultiPoly::zero(a.ring());
  int da = a.degree_in(var);
  int db = b.degree_in(var);
  if (da <= 0 && db <= 0) throw input_error("variable absent from both resultant inputs");
  if (a.total_degree() > degree_cap || b.total_degree() > degree_cap)
    throw cap_error("degree cap exceeded in resultant");
  if (da == 0) return poly_pow(a, db, kNoCap);
  if (db == 0) return poly_pow(b, da, kNoCap);

  std::set<int> rem;
  for (int v : a.vars_present()) rem.insert(v);
  for (int v : b.vars_present()) rem.insert(v);
  rem.erase(var);

  if (rem.empty()) {
    std::vector<Rational> ac(da + 1), bc(db + 1);
    for (int k = 0; k <= da; ++k) ac[k] = a.coeff_in(var, k).constant_value();
    for (int k = 0; k <= db; ++k) bc[k] = b.coeff_in(var, k).constant_value();
    return MultiPoly::constant(a.ring(), numeric_resultant(ac, bc));
  }
  if (rem.size() == 1) return resultant_interp(a, b, var, *rem.begin());
  return resultant_via_determinant(a, b, var, degree_cap);
}

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var,
                    int degree_cap) {
  int idx = ring_index(a.ring(), var);
  if (idx < 0) throw input_error("unknown variable " + var);
  return resultant(a, b, idx, degree_cap);
}

}  // namespace stimg
