#include "stimg/fibers.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <set>

namespace stimg {
namespace {

constexpr int kVarX = 0;
constexpr int kVarY = 1;

// top form of p evaluated at (1, lambda); nonzero iff after y -> y + lambda*x
// the x-degree of p equals its total degree with a constant leading coefficient
Rational topform_at(const MultiPoly& p, long long lambda) {
  const int d = p.total_degree();
  Rational acc(0);
  Rational lam(static_cast<long>(lambda));
  for (const auto& [m, c] : p.terms()) {
    if (m.total_degree() != d) continue;
    Rational t = c;
    for (int j = 0; j < m.exps[kVarY]; ++j) t *= lam;
    acc += t;
  }
  return acc;
}

MultiPoly apply_shear(const MultiPoly& p, long long lambda, int degree_cap) {
  const Ring& ring = p.ring();
  MultiPoly x = MultiPoly::variable(ring, kVarX);
  MultiPoly y = MultiPoly::variable(ring, kVarY);
  std::vector<MultiPoly> bindings{x, y + x.scaled(Rational(static_cast<long>(lambda)))};
  return substitute(p, bindings, degree_cap);
}

// content with respect to `var`: gcd of the coefficient polynomials, which
// live in the other variable only
MultiPoly content_in(const MultiPoly& p, int var) {
  MultiPoly g = MultiPoly::zero(p.ring());
  for (int k = 0; k <= std::max(p.degree_in(var), 0); ++k)
    g = gcd_univariate(g, p.coeff_in(var, k));
  return g;
}

// Do the shifted components cut out a common curve? Exact: contents catch a
// factor free of the eliminated variable, a vanishing resultant catches the
// rest. Checked in both elimination directions.
bool share_nonconstant_factor(const MultiPoly& P, const MultiPoly& Q, int degree_cap) {
  for (int var : {kVarX, kVarY}) {
    MultiPoly cp = P.degree_in(var) > 0 ? content_in(P, var) : P;
    MultiPoly cq = Q.degree_in(var) > 0 ? content_in(Q, var) : Q;
    if (!gcd_univariate(cp, cq).is_constant()) return true;
    if (P.degree_in(var) > 0 && Q.degree_in(var) > 0 &&
        resultant(P, Q, var, degree_cap).is_zero())
      return true;
  }
  return false;
}

struct ShearOutcome {
  long long lambda = 0;
  bool empty = false;         // eliminant is a nonzero constant
  int distinct = 0;           // distinct roots of the squarefree eliminant
  bool lifts_unique = true;   // every rational root lifted to exactly one x
  bool roots_complete = true;
  std::vector<Point> solutions;  // unsheared rational solutions
};

// Solve the sheared system for one lambda. Requires the shear to be
// lc-generic for both polynomials (checked by the caller via topform_at).
ShearOutcome run_shear(const MultiPoly& P, const MultiPoly& Q, long long lambda,
                       const FiberOptions& opts) {
  ShearOutcome out;
  out.lambda = lambda;

  MultiPoly Ps = apply_shear(P, lambda, opts.degree_cap);
  MultiPoly Qs = apply_shear(Q, lambda, opts.degree_cap);
  MultiPoly R = resultant(Ps, Qs, kVarX, opts.degree_cap);
  if (R.is_zero()) throw error("internal: vanishing eliminant after common-factor check");
  if (R.is_constant()) {
    out.empty = true;
    return out;
  }

  MultiPoly S = squarefree_part(R);
  out.distinct = S.degree_in(kVarY);

  RootSearch roots = rational_roots(S, opts.root_budget);
  out.roots_complete = roots.complete;
  const Ring& ring = P.ring();
  const Rational lam(static_cast<long>(lambda));
  for (const Rational& r : roots.roots) {
    std::vector<MultiPoly> at_r{MultiPoly::variable(ring, kVarX),
                                MultiPoly::constant(ring, r)};
    MultiPoly pr = substitute(Ps, at_r, opts.degree_cap);
    MultiPoly qr = substitute(Qs, at_r, opts.degree_cap);
    MultiPoly g = gcd_univariate(pr, qr);
    if (g.is_constant())
      throw error("internal: eliminant root without a lift");
    MultiPoly sg = squarefree_part(g);
    if (sg.degree_in(kVarX) != 1) out.lifts_unique = false;
    RootSearch xr = rational_roots(sg, opts.root_budget);
    if (!xr.complete) out.roots_complete = false;
    for (const Rational& x0 : xr.roots) {
      // undo y -> y + lambda*x
      out.solutions.push_back(Point{x0, r + lam * x0});
    }
  }
  return out;
}

FiberResult empty_result() {
  FiberResult r;
  r.status = FiberStatus::Empty;
  r.certified = true;
  return r;
}

FiberResult infinite_result() {
  FiberResult r;
  r.status = FiberStatus::Infinite;
  r.certified = false;
  r.enumeration_complete = false;
  return r;
}

}  // namespace

FiberResult solve_fiber(const PolyMap& f, const Point& target, const FiberOptions& opts) {
  const Ring& ring = f.ring();
  if (f.p().is_constant() && f.q().is_constant())
    throw input_error("degenerate constant map");

  MultiPoly P = f.p() - MultiPoly::constant(ring, target.x);
  MultiPoly Q = f.q() - MultiPoly::constant(ring, target.y);

  // one constant shifted component decides immediately
  if (P.is_constant()) {
    if (!P.is_zero()) return empty_result();
    return infinite_result();  // fiber is the whole curve Q = 0
  }
  if (Q.is_constant()) {
    if (!Q.is_zero()) return empty_result();
    return infinite_result();
  }

  if (P.total_degree() > opts.degree_cap || Q.total_degree() > opts.degree_cap)
    throw cap_error("degree cap exceeded in fiber solve");

  if (share_nonconstant_factor(P, Q, opts.degree_cap)) return infinite_result();

  // two independent lc-generic shears certify the distinct count
  std::mt19937_64 rng(opts.seed);
  std::set<long long> used;
  auto next_lambda = [&]() -> long long {
    for (int t = 0; t < 1024; ++t) {
      long long lam = 1 + static_cast<long long>(rng() % 997);
      if (used.count(lam)) continue;
      if (topform_at(P, lam).is_zero() || topform_at(Q, lam).is_zero()) continue;
      used.insert(lam);
      return lam;
    }
    // deterministic sweep; the top forms only have finitely many roots
    for (long long lam = 1;; ++lam) {
      if (used.count(lam)) continue;
      if (topform_at(P, lam).is_zero() || topform_at(Q, lam).is_zero()) continue;
      used.insert(lam);
      return lam;
    }
  };

  std::optional<ShearOutcome> first, second;
  for (int attempt = 0; attempt < opts.shear_tries && !second; ++attempt) {
    ShearOutcome o = run_shear(P, Q, next_lambda(), opts);
    if (o.empty) return empty_result();
    if (!o.lifts_unique && attempt + 1 < opts.shear_tries) continue;  // retry on collisions
    if (!first)
      first = std::move(o);
    else
      second = std::move(o);
  }
  if (!first) first = run_shear(P, Q, next_lambda(), opts);
  if (first->empty) return empty_result();
  if (!second) second = run_shear(P, Q, next_lambda(), opts);
  if (second->empty) throw error("internal: shears disagree on emptiness");

  FiberResult res;
  res.status = FiberStatus::Finite;
  res.certified = first->lifts_unique && second->lifts_unique &&
                  first->distinct == second->distinct;
  res.distinct_count_over_C = std::max(first->distinct, second->distinct);
  res.enumeration_complete = first->roots_complete || second->roots_complete;

  std::set<Point> sols(first->solutions.begin(), first->solutions.end());
  for (const Point& s : second->solutions) sols.insert(s);
  for (const Point& s : sols) {
    if (!(f.apply(s) == target)) throw error("internal: unsound fiber solution");
    res.rational_solutions.push_back(s);
  }
  std::sort(res.rational_solutions.begin(), res.rational_solutions.end(), height_lex_less);

  const long long bezout =
      static_cast<long long>(f.p().total_degree()) * f.q().total_degree();
  if (res.distinct_count_over_C > bezout)
    throw error("internal: count exceeds the Bezout bound");
  if (static_cast<int>(res.rational_solutions.size()) > res.distinct_count_over_C)
    res.distinct_count_over_C = static_cast<int>(res.rational_solutions.size());
  return res;
}

bool in_image(const PolyMap& f, const Point& target, const FiberOptions& opts) {
  return solve_fiber(f, target, opts).status != FiberStatus::Empty;
}

AMembership a_membership(const PolyMap& f, const Point& target, int n,
                         const FiberOptions& opts) {
  if (n < 0) throw input_error("negative preimage bound");
  FiberResult r = solve_fiber(f, target, opts);
  AMembership out;
  out.point = target;
  out.n = n;
  switch (r.status) {
    case FiberStatus::Empty:
      out.member = Membership::Yes;
      break;
    case FiberStatus::Infinite:
      out.member = Membership::No;
      break;
    case FiberStatus::Finite:
      if (r.certified)
        out.member = r.distinct_count_over_C <= n ? Membership::Yes : Membership::No;
      else if (r.distinct_count_over_C > n)
        out.member = Membership::No;  // the uncertified count is a lower bound
      else
        out.member = Membership::Indeterminate;
      break;
  }
  return out;
}

}  // namespace stimg
