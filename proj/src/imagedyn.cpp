#include "stimg/imagedyn.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace stimg {

PolyMap iterate_map(const PolyMap& f, int k, int degree_cap) {
  if (k < 1) throw input_error("iteration count must be positive");
  const int d = std::max({f.p().total_degree(), f.q().total_degree(), 1});
  long long bound = 1;
  for (int i = 0; i < k; ++i) {
    bound *= d;
    if (bound > degree_cap)
      throw cap_error("degree cap exceeded: deg(f)^k passes the cap");
  }
  PolyMap g = f;
  for (int i = 1; i < k; ++i) g = compose(f, g, degree_cap);
  return g;
}

MapClassification classify(const PolyMap& f) {
  MapClassification c{jacobian_det(f), MapKind::DegenerateJacobian};
  if (c.jacobian.is_zero())
    c.kind = MapKind::DegenerateJacobian;
  else if (c.jacobian.is_constant())
    c.kind = MapKind::JacobianPair;
  else
    c.kind = MapKind::NonConstantJacobian;
  return c;
}

namespace {

std::vector<Point> sorted_points(const std::set<Point>& s) {
  std::vector<Point> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), height_lex_less);
  return v;
}

// Recursive degeneracy pattern on the symbolic eliminant S(fiber_var; a, b):
// follow vanishing leading coefficients through rational root search until
// both parameters are pinned. Bivariate leading coefficients are paired with
// a lower coefficient and handed to the fiber solver on the parameter plane.
struct PatternSearch {
  const Ring& ring4;
  int fiber_var;
  int var_a;
  int var_b;
  const FiberOptions& opts;
  std::set<Point>& candidates;
  bool truncated = false;

  void run(const MultiPoly& S, std::optional<Rational> fa, std::optional<Rational> fb) {
    if (S.is_zero()) {
      truncated = true;  // a whole slice degenerates; no point pattern to chase
      return;
    }
    const int d = std::max(S.degree_in(fiber_var), 0);
    MultiPoly lc = S.coeff_in(fiber_var, d);
    auto vars = lc.vars_present();
    std::vector<int> params;
    for (int v : vars)
      if (v == var_a || v == var_b) params.push_back(v);

    if (params.empty()) return;  // nonzero constant leading coefficient: no drop

    if (params.size() == 1) {
      const int v = params[0];
      RootSearch rs = rational_roots(lc, opts.root_budget);
      if (!rs.complete) truncated = true;
      for (const Rational& rho : rs.roots) {
        std::vector<MultiPoly> bind;
        for (int i = 0; i < static_cast<int>(ring4->size()); ++i)
          bind.push_back(i == v ? MultiPoly::constant(ring4, rho)
                                : MultiPoly::variable(ring4, i));
        MultiPoly Snext = substitute(S, bind, kDefaultDegreeCap * 4);
        auto nfa = fa;
        auto nfb = fb;
        (v == var_a ? nfa : nfb) = rho;
        if (nfa && nfb)
          candidates.insert(Point{*nfa, *nfb});
        else
          run(Snext, nfa, nfb);
      }
      return;
    }

    // both parameters free: intersect the leading coefficient with the next
    // nonconstant coefficient on the (a,b) plane
    Ring ring_ab = make_ring({(*ring4)[var_a], (*ring4)[var_b]});
    for (int j = d - 1; j >= 0; --j) {
      MultiPoly cj = S.coeff_in(fiber_var, j);
      bool involves_params = false;
      for (int v : cj.vars_present())
        if (v == var_a || v == var_b) involves_params = true;
      if (!involves_params) continue;
      PolyMap g(reringed(lc, ring_ab), reringed(cj, ring_ab));
      FiberResult r = solve_fiber(g, Point{Rational(0), Rational(0)}, opts);
      if (r.status == FiberStatus::Infinite) continue;  // shared curve; try lower
      for (const Point& s : r.rational_solutions) candidates.insert(s);
      if (!r.enumeration_complete) truncated = true;
      if (r.distinct_count_over_C > static_cast<int>(r.rational_solutions.size()))
        truncated = true;  // irrational degeneracy points are out of reach
      return;
    }
    truncated = true;  // every pairing shared a curve
  }
};

std::string fresh_name(const Ring& ring, const std::string& want) {
  std::string name = want;
  while (ring_index(ring, name) >= 0) name += "_";
  return name;
}

}  // namespace

CoimageReport coimage_candidates(const PolyMap& f, const FiberOptions& opts) {
  MapClassification cls = classify(f);
  if (cls.kind == MapKind::DegenerateJacobian)
    throw input_error("coimage search needs a nondegenerate jacobian");

  const Ring& r2 = f.ring();
  std::string na = fresh_name(r2, "a");
  std::string nb = fresh_name(r2, "b");
  Ring ring4 = make_ring({(*r2)[0], (*r2)[1], na, nb});
  const int var_a = 2, var_b = 3;

  MultiPoly P4 = reringed(f.p(), ring4) - MultiPoly::variable(ring4, var_a);
  MultiPoly Q4 = reringed(f.q(), ring4) - MultiPoly::variable(ring4, var_b);

  int elim = 0;
  if (P4.degree_in(0) <= 0 && Q4.degree_in(0) <= 0) elim = 1;
  const int fiber_var = 1 - elim;
  MultiPoly S = resultant(P4, Q4, elim, opts.degree_cap);

  std::set<Point> candidates;
  bool truncated = false;
  if (S.is_zero()) {
    truncated = true;  // components share a factor for every target
  } else {
    PatternSearch ps{ring4, fiber_var, var_a, var_b, opts, candidates};
    ps.run(S, std::nullopt, std::nullopt);
    truncated = truncated || ps.truncated;
  }

  // critical values: images of rational points on J(f) = 0, found by slicing
  if (!cls.jacobian.is_constant()) {
    static const long kSliceNums[] = {0, 1, -1, 2, -2};
    std::vector<Rational> slices;
    for (long n : kSliceNums) slices.push_back(Rational(n));
    slices.push_back(Rational(1, 2));
    slices.push_back(Rational(-1, 2));
    for (const Rational& x0 : slices) {
      std::vector<MultiPoly> bind{MultiPoly::constant(r2, x0), MultiPoly::variable(r2, 1)};
      MultiPoly jx = substitute(cls.jacobian, bind, opts.degree_cap);
      std::vector<Rational> ys;
      if (jx.is_zero()) {
        ys = {Rational(0), Rational(1), Rational(-1)};
      } else if (!jx.is_constant()) {
        RootSearch rs = rational_roots(jx, opts.root_budget);
        if (!rs.complete) truncated = true;
        ys = rs.roots;
      }
      for (const Rational& y0 : ys) candidates.insert(f.apply(Point{x0, y0}));
    }
  }

  CoimageReport report;
  report.candidates = sorted_points(candidates);
  for (const Point& c : report.candidates)
    if (!in_image(f, c, opts)) report.certified_coimage.push_back(c);
  report.exhausted = !truncated;
  return report;
}

namespace {

enum class Verdict { In, Out, Indet };

struct StabilizationEngine {
  const PolyMap& f;
  const FiberOptions& opts;
  std::vector<Point> universe;                 // sorted
  std::map<Point, FiberResult> fibers;
  std::map<Point, std::vector<Point>> known_preimages;  // fiber ∩ universe
  std::map<std::pair<Point, int>, Verdict> memo;

  // Membership of u in f^k(C^2). "Out" verdicts are unconditional: they only
  // chain through empty fibers and fibers whose points all lie in the
  // universe. "In" verdicts may use the convention that the candidate set
  // covers the coimage, in which case every omitted point at every level
  // stays inside the (rational) universe, so a fiber point outside it is
  // always hit.
  Verdict decide(const Point& u, int k) {
    if (k <= 0) return Verdict::In;
    auto key = std::make_pair(u, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const FiberResult& fib = fibers.at(u);
    Verdict v = Verdict::Indet;
    if (fib.status == FiberStatus::Empty) {
      v = Verdict::Out;
    } else if (k == 1) {
      v = Verdict::In;
    } else {
      const auto& W = known_preimages.at(u);
      bool any_in = false;
      bool any_indet = false;
      for (const Point& w : W) {
        Verdict sub = decide(w, k - 1);
        if (sub == Verdict::In) any_in = true;
        if (sub == Verdict::Indet) any_indet = true;
      }
      const int in_universe = static_cast<int>(W.size());
      if (any_in) {
        v = Verdict::In;
      } else if (fib.status == FiberStatus::Infinite) {
        v = Verdict::In;  // infinitely many preimages cannot all sit in the universe
      } else if (fib.distinct_count_over_C > in_universe) {
        v = Verdict::In;  // some preimage escapes the universe
      } else if (fib.certified && !any_indet) {
        v = Verdict::Out;  // the whole (finite) fiber is certified omitted
      } else {
        v = Verdict::Indet;
      }
    }
    memo.emplace(key, v);
    return v;
  }
};

}  // namespace

StabilizationReport stabilization_report(const PolyMap& f, std::vector<Point> candidates,
                                         int k_max, const FiberOptions& opts) {
  if (k_max < 1) throw input_error("k_max must be positive");

  StabilizationReport report;
  std::set<Point> cand_set(candidates.begin(), candidates.end());
  report.candidates = sorted_points(cand_set);

  // probe universe: candidates closed under f up to k_max applications
  std::set<Point> universe = cand_set;
  std::vector<Point> frontier(cand_set.begin(), cand_set.end());
  for (int step = 0; step < k_max; ++step) {
    std::vector<Point> next;
    for (const Point& u : frontier) {
      Point img = f.apply(u);
      if (universe.insert(img).second) next.push_back(img);
    }
    frontier = std::move(next);
  }
  report.universe = sorted_points(universe);

  StabilizationEngine eng{f, opts};
  eng.universe = report.universe;
  for (const Point& u : eng.universe) eng.fibers.emplace(u, solve_fiber(f, u, opts));
  for (const Point& u : eng.universe) eng.known_preimages[u] = {};
  for (const Point& w : eng.universe) {
    Point img = f.apply(w);
    auto it = eng.known_preimages.find(img);
    if (it != eng.known_preimages.end()) it->second.push_back(w);
  }

  for (int k = 1; k <= k_max; ++k) {
    std::vector<Point> omitted;
    std::vector<Point> indet;
    for (const Point& u : eng.universe) {
      Verdict v = eng.decide(u, k);
      if (v == Verdict::Out) omitted.push_back(u);
      if (v == Verdict::Indet) indet.push_back(u);
    }
    report.chain.push_back(std::move(omitted));
    report.indeterminate.push_back(std::move(indet));
  }

  for (int k = 1; k < k_max; ++k) {
    bool settled = true;
    for (int j = k; j < k_max; ++j)
      if (report.chain[j] != report.chain[k - 1]) settled = false;
    if (settled) {
      report.K = k;
      break;
    }
  }

  std::ostringstream note;
  if (report.K) {
    const auto& stable = report.chain[*report.K - 1];
    note << "levels " << *report.K << ".." << k_max << " agree; ";
    if (stable.empty())
      note << "no probed point is permanently omitted";
    else {
      note << "permanently omitted:";
      for (const Point& p : stable) note << " (" << p.x.str() << "," << p.y.str() << ")";
    }
  } else {
    note << "no stabilization within k_max=" << k_max;
  }
  note << "; omission certificates are unconditional, membership conclusions assume "
          "the candidate set covers the coimage";
  report.stable_image_note = note.str();
  return report;
}

std::optional<InjectivityWitness> injectivity_witness_search(const PolyMap& f,
                                                             std::vector<Point> targets,
                                                             bool auto_probe,
                                                             const FiberOptions& opts) {
  std::set<Point> all(targets.begin(), targets.end());
  if (auto_probe) {
    // every rational value of height <= 5
    std::vector<Rational> values;
    for (long q = 1; q <= 5; ++q)
      for (long p = -5; p <= 5; ++p) {
        Rational v(p, q);
        if (height(v) <= 5) values.push_back(v);
      }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (const Rational& a : values)
      for (const Rational& b : values) all.insert(Point{a, b});
  }
  std::vector<Point> ordered = sorted_points(all);

  for (const Point& t : ordered) {
    FiberResult r = solve_fiber(f, t, opts);
    if (r.rational_solutions.size() >= 2) {
      InjectivityWitness w{r.rational_solutions[0], r.rational_solutions[1], t};
      if (!(f.apply(w.first) == t) || !(f.apply(w.second) == t) || w.first == w.second)
        throw error("internal: invalid witness");
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace stimg
