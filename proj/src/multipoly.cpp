#include "stimg/multipoly.hpp"

#include <algorithm>
#include <numeric>

namespace stimg {

Ring make_ring(std::vector<std::string> names) {
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw input_error("duplicate ring variable " + names[i]);
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_ring(const Ring& a, const Ring& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

int ring_index(const Ring& r, const std::string& name) {
  if (!r) return -1;
  for (size_t i = 0; i < r->size(); ++i)
    if ((*r)[i] == name) return static_cast<int>(i);
  return -1;
}

int Monomial::total_degree() const {
  return std::accumulate(exps.begin(), exps.end(), 0);
}

bool MonoLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.total_degree();
  int db = b.total_degree();
  if (da != db) return da < db;
  // ties: later variable first
  for (size_t i = a.exps.size(); i-- > 0;) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
  }
  return false;
}

namespace {

void check_ring(const MultiPoly& a, const MultiPoly& b) {
  if (!same_ring(a.ring(), b.ring())) throw input_error("ring mismatch");
}

}  // namespace

MultiPoly MultiPoly::zero(Ring ring) {
  MultiPoly p;
  p.ring_ = std::move(ring);
  return p;
}

MultiPoly MultiPoly::constant(Ring ring, Rational c) {
  MultiPoly p;
  p.ring_ = std::move(ring);
  if (!c.is_zero()) p.terms_.emplace(Monomial{std::vector<int>(p.ring_->size(), 0)}, std::move(c));
  return p;
}

MultiPoly MultiPoly::variable(Ring ring, int index) {
  if (index < 0 || static_cast<size_t>(index) >= ring->size())
    throw input_error("variable index out of range");
  MultiPoly p;
  p.ring_ = std::move(ring);
  Monomial m{std::vector<int>(p.ring_->size(), 0)};
  m.exps[index] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

MultiPoly MultiPoly::from_terms(Ring ring, TermMap terms) {
  MultiPoly p;
  p.ring_ = std::move(ring);
  for (auto& [m, c] : terms) {
    if (m.exps.size() != p.ring_->size()) throw input_error("monomial arity mismatch");
    for (int e : m.exps)
      if (e < 0) throw input_error("negative exponent in monomial");
    if (!c.is_zero()) p.terms_.emplace(m, c);
  }
  return p;
}

int MultiPoly::nvars() const { return ring_ ? static_cast<int>(ring_->size()) : 0; }

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.total_degree() == 0;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw input_error("polynomial is not constant");
  return terms_.begin()->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  // terms_ is graded: the last entry has maximal total degree
  return terms_.rbegin()->first.total_degree();
}

int MultiPoly::degree_in(int var) const {
  if (var < 0 || var >= nvars()) throw input_error("unknown variable");
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exps[var]);
  return d;
}

Rational MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly MultiPoly::coeff_in(int var, int k) const {
  if (var < 0 || var >= nvars()) throw input_error("unknown variable");
  if (k < 0) throw input_error("negative exponent");
  MultiPoly out = zero(ring_);
  for (const auto& [m, c] : terms_) {
    if (m.exps[var] != k) continue;
    Monomial stripped = m;
    stripped.exps[var] = 0;
    out.terms_.emplace(std::move(stripped), c);
  }
  return out;
}

MultiPoly MultiPoly::leading_coeff_in(int var) const {
  int d = degree_in(var);
  if (d < 0) return zero(ring_);
  return coeff_in(var, d);
}

std::vector<int> MultiPoly::vars_present() const {
  std::vector<bool> seen(nvars(), false);
  for (const auto& [m, c] : terms_)
    for (size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i] > 0) seen[i] = true;
  std::vector<int> out;
  for (int i = 0; i < nvars(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_ring(*this, o);
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_ring(*this, o);
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  return mul(a, b, kDefaultDegreeCap);
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return zero(ring_);
  MultiPoly out = *this;
  for (auto& [m, v] : out.terms_) v *= c;
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return same_ring(a.ring(), b.ring()) && a.terms() == b.terms();
}

MultiPoly mul(const MultiPoly& a, const MultiPoly& b, int degree_cap) {
  check_ring(a, b);
  if (a.is_zero() || b.is_zero()) return MultiPoly::zero(a.ring());
  if (a.total_degree() > degree_cap || b.total_degree() > degree_cap)
    throw cap_error("degree cap exceeded in product");
  MultiPoly::TermMap acc;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = ma;
      for (size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
      Rational c = ca * cb;
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(std::move(m), std::move(c));
      } else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  }
  return MultiPoly::from_terms(a.ring(), std::move(acc));
}

MultiPoly poly_pow(const MultiPoly& a, int e, int degree_cap) {
  if (e < 0) throw input_error("negative exponent");
  if (e == 0) return MultiPoly::constant(a.ring(), Rational(1));
  int d = a.total_degree();
  if (d > 0 && static_cast<long long>(d) * e > degree_cap)
    throw cap_error("degree cap exceeded in power");
  MultiPoly out = a;
  for (int i = 1; i < e; ++i) out = mul(out, a, degree_cap);
  return out;
}

Rational evaluate(const MultiPoly& p, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != p.nvars())
    throw input_error("evaluation arity mismatch");
  // per-variable power tables
  std::vector<std::vector<Rational>> pows(p.nvars());
  for (int v = 0; v < p.nvars(); ++v) pows[v].push_back(Rational(1));
  Rational acc(0);
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (size_t v = 0; v < m.exps.size(); ++v) {
      int e = m.exps[v];
      auto& tab = pows[v];
      while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * point[v]);
      if (e > 0) t *= tab[e];
    }
    acc += t;
  }
  return acc;
}

MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& bindings,
                     int degree_cap) {
  if (static_cast<int>(bindings.size()) != p.nvars())
    throw input_error("substitution arity mismatch");
  if (bindings.empty()) throw input_error("empty ring substitution");
  const Ring& target = bindings[0].ring();
  for (const auto& b : bindings)
    if (!same_ring(b.ring(), target)) throw input_error("ring mismatch in bindings");

  int maxb = 1;
  for (const auto& b : bindings) maxb = std::max(maxb, b.total_degree());
  int d = p.total_degree();
  if (d > 0 && static_cast<long long>(d) * maxb > degree_cap)
    throw cap_error("degree cap exceeded in substitution");

  // memoized binding powers
  std::map<std::pair<int, int>, MultiPoly> pow_memo;
  auto binding_pow = [&](int v, int e) -> const MultiPoly& {
    auto key = std::make_pair(v, e);
    auto it = pow_memo.find(key);
    if (it != pow_memo.end()) return it->second;
    MultiPoly val = poly_pow(bindings[v], e, degree_cap);
    return pow_memo.emplace(key, std::move(val)).first->second;
  };

  MultiPoly acc = MultiPoly::zero(target);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(target, c);
    for (size_t v = 0; v < m.exps.size(); ++v)
      if (m.exps[v] > 0) t = mul(t, binding_pow(static_cast<int>(v), m.exps[v]), degree_cap);
    acc += t;
  }
  return acc;
}

MultiPoly partial_derivative(const MultiPoly& p, int var) {
  if (var < 0 || var >= p.nvars()) throw input_error("unknown variable");
  MultiPoly::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    int e = m.exps[var];
    if (e == 0) continue;
    Monomial dm = m;
    dm.exps[var] = e - 1;
    out.emplace(std::move(dm), c * Rational(e));
  }
  return MultiPoly::from_terms(p.ring(), std::move(out));
}

MultiPoly partial_derivative(const MultiPoly& p, const std::string& var) {
  int idx = ring_index(p.ring(), var);
  if (idx < 0) throw input_error("unknown variable " + var);
  return partial_derivative(p, idx);
}

MultiPoly reringed(const MultiPoly& p, const Ring& target) {
  std::vector<int> where(p.nvars(), -1);
  for (int v = 0; v < p.nvars(); ++v) {
    where[v] = ring_index(target, (*p.ring())[v]);
  }
  MultiPoly::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    Monomial nm{std::vector<int>(target->size(), 0)};
    for (size_t v = 0; v < m.exps.size(); ++v) {
      if (m.exps[v] == 0) continue;
      if (where[v] < 0)
        throw input_error("variable " + (*p.ring())[v] + " missing from target ring");
      nm.exps[where[v]] = m.exps[v];
    }
    out.emplace(std::move(nm), c);
  }
  return MultiPoly::from_terms(target, std::move(out));
}

}  // namespace stimg
