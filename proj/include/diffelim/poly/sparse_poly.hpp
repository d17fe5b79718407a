#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diffelim/arith/prime_field.hpp"
#include "diffelim/arith/rational.hpp"
#include "diffelim/poly/monomial.hpp"

namespace diffelim {

/// Sparse multivariate polynomial over a coefficient ring.
///
/// Terms are accumulated in a hash map during arithmetic and stored as a
/// vector sorted by decreasing graded-lex order, so terms().front() is the
/// leading term. Values are immutable once built and can be shared between
/// threads.
template <class Ring>
class SparsePoly {
 public:
  using Coeff = typename Ring::Element;
  using Term = std::pair<ExponentVector, Coeff>;
  using TermMap = std::unordered_map<ExponentVector, Coeff, ExponentHash>;

  SparsePoly(Ring ring, VarSet vars) : ring_(std::move(ring)), vars_(std::move(vars)) {}

  static SparsePoly from_map(Ring ring, VarSet vars, TermMap&& map) {
    SparsePoly p(std::move(ring), std::move(vars));
    p.terms_.reserve(map.size());
    for (auto& [e, c] : map) {
      if (!p.ring_.is_zero(c)) p.terms_.emplace_back(e, std::move(c));
    }
    p.sort_terms();
    return p;
  }

  static SparsePoly from_terms(Ring ring, VarSet vars, std::vector<Term> terms) {
    TermMap map;
    for (auto& [e, c] : terms) {
      if (e.size() != vars.size()) throw std::invalid_argument("SparsePoly: exponent length mismatch");
      auto [it, inserted] = map.try_emplace(e, c);
      if (!inserted) it->second = ring.add(it->second, c);
    }
    return from_map(std::move(ring), std::move(vars), std::move(map));
  }

  static SparsePoly constant(Ring ring, VarSet vars, Coeff c) {
    SparsePoly p(ring, vars);
    if (!ring.is_zero(c)) p.terms_.emplace_back(ExponentVector(vars.size(), 0), std::move(c));
    return p;
  }

  static SparsePoly variable(Ring ring, VarSet vars, std::size_t index, Exponent power = 1) {
    if (index >= vars.size()) throw std::out_of_range("SparsePoly::variable: index out of range");
    ExponentVector e(vars.size(), 0);
    e[index] = power;
    SparsePoly p(ring, vars);
    p.terms_.emplace_back(std::move(e), ring.one());
    return p;
  }

  const Ring& ring() const { return ring_; }
  const VarSet& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading_term of zero polynomial");
    return terms_.front();
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, diffelim::total_degree(t.first));
    return d;
  }

  Exponent degree_in(std::size_t var) const {
    Exponent d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first[var]);
    return d;
  }

  Coeff coefficient(const ExponentVector& e) const {
    for (const auto& t : terms_)
      if (t.first == e) return t.second;
    return ring_.zero();
  }

  TermMap to_map() const {
    TermMap m;
    m.reserve(terms_.size() * 2);
    for (const auto& [e, c] : terms_) m.emplace(e, c);
    return m;
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second = ring_.neg(t.second);
    return r;
  }

  friend SparsePoly operator+(const SparsePoly& f, const SparsePoly& g) { return combine(f, g, false); }
  friend SparsePoly operator-(const SparsePoly& f, const SparsePoly& g) { return combine(f, g, true); }

  friend SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) {
    check_compatible(f, g);
    const Ring& ring = f.ring_;
    TermMap acc;
    acc.reserve(f.size() * g.size());
    ExponentVector e(f.vars_.size());
    for (const auto& [ef, cf] : f.terms_) {
      for (const auto& [eg, cg] : g.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ef[i] + eg[i];
        auto prod = ring.mul(cf, cg);
        auto [it, inserted] = acc.try_emplace(e, prod);
        if (!inserted) it->second = ring.add(it->second, prod);
      }
    }
    return from_map(f.ring_, f.vars_, std::move(acc));
  }

  SparsePoly scaled(const Coeff& c) const {
    SparsePoly r(ring_, vars_);
    if (ring_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, v] : terms_) {
      auto p = ring_.mul(v, c);
      if (!ring_.is_zero(p)) r.terms_.emplace_back(e, std::move(p));
    }
    return r;
  }

  SparsePoly pow(std::uint64_t k) const {
    SparsePoly result = constant(ring_, vars_, ring_.one());
    SparsePoly base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const SparsePoly& f, const SparsePoly& g) {
    if (!(f.vars_ == g.vars_) || f.terms_.size() != g.terms_.size()) return false;
    for (std::size_t i = 0; i < f.terms_.size(); ++i) {
      if (f.terms_[i].first != g.terms_[i].first) return false;
      if (!f.ring_.equal(f.terms_[i].second, g.terms_[i].second)) return false;
    }
    return true;
  }

 private:
  static void check_compatible(const SparsePoly& f, const SparsePoly& g) {
    if (!(f.vars_ == g.vars_)) throw std::invalid_argument("SparsePoly: variable set mismatch");
    if (!(f.ring_ == g.ring_)) throw std::invalid_argument("SparsePoly: coefficient ring mismatch");
  }

  static SparsePoly combine(const SparsePoly& f, const SparsePoly& g, bool subtract) {
    check_compatible(f, g);
    const Ring& ring = f.ring_;
    // both inputs are sorted; merge
    SparsePoly r(f.ring_, f.vars_);
    r.terms_.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
      int cmp;
      if (i == f.size()) cmp = -1;
      else if (j == g.size()) cmp = 1;
      else cmp = f.vars_.compare(f.terms_[i].first, g.terms_[j].first);
      if (cmp > 0) {
        r.terms_.push_back(f.terms_[i++]);
      } else if (cmp < 0) {
        const auto& t = g.terms_[j++];
        r.terms_.emplace_back(t.first, subtract ? ring.neg(t.second) : t.second);
      } else {
        auto c = subtract ? ring.sub(f.terms_[i].second, g.terms_[j].second)
                          : ring.add(f.terms_[i].second, g.terms_[j].second);
        if (!ring.is_zero(c)) r.terms_.emplace_back(f.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [this](const Term& a, const Term& b) { return vars_.compare(a.first, b.first) > 0; });
  }

  Ring ring_;
  VarSet vars_;
  std::vector<Term> terms_;
};

using PolyQ = SparsePoly<Rationals>;
using PolyP = SparsePoly<PrimeField>;

template <class Ring>
SparsePoly<Ring> partial_derivative(const SparsePoly<Ring>& f, std::size_t var) {
  if (var >= f.vars().size()) throw std::out_of_range("partial_derivative: variable index out of range");
  const Ring& ring = f.ring();
  typename SparsePoly<Ring>::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    ExponentVector d = e;
    d[var] -= 1;
    auto coeff = ring.mul(c, ring.from_int(e[var]));
    auto [it, inserted] = out.try_emplace(std::move(d), coeff);
    if (!inserted) it->second = ring.add(it->second, coeff);
  }
  return SparsePoly<Ring>::from_map(f.ring(), f.vars(), std::move(out));
}

/// Per-variable power tables for repeated evaluation at one point.
template <class Ring>
class PowerTable {
 public:
  using Coeff = typename Ring::Element;

  PowerTable(const Ring& ring, std::span<const Coeff> point, std::span<const Exponent> max_exp)
      : ring_(ring), table_(point.size()) {
    for (std::size_t i = 0; i < point.size(); ++i) {
      auto& row = table_[i];
      row.reserve(max_exp[i] + 1);
      row.push_back(ring.one());
      for (Exponent k = 1; k <= max_exp[i]; ++k) row.push_back(ring.mul(row.back(), point[i]));
    }
  }

  Coeff monomial(const ExponentVector& e) const {
    Coeff v = ring_.one();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) v = ring_.mul(v, table_[i][e[i]]);
    return v;
  }

 private:
  const Ring& ring_;
  std::vector<std::vector<Coeff>> table_;
};

template <class Ring>
typename Ring::Element evaluate(const SparsePoly<Ring>& f, std::span<const typename Ring::Element> point) {
  if (point.size() != f.vars().size()) throw std::invalid_argument("evaluate: point length mismatch");
  const Ring& ring = f.ring();
  std::vector<Exponent> max_exp(point.size(), 0);
  for (std::size_t i = 0; i < point.size(); ++i) max_exp[i] = f.degree_in(i);
  PowerTable<Ring> table(ring, point, max_exp);
  auto acc = ring.zero();
  for (const auto& [e, c] : f.terms()) acc = ring.add(acc, ring.mul(c, table.monomial(e)));
  return acc;
}

inline bool divides(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Exact quotient f / g if g divides f, by division with remainder under the
/// graded-lex order; nothing otherwise.
template <class Ring>
std::optional<SparsePoly<Ring>> exact_divide(const SparsePoly<Ring>& f, const SparsePoly<Ring>& g) {
  if (g.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
  if (!(f.vars() == g.vars())) throw std::invalid_argument("exact_divide: variable set mismatch");
  const Ring& ring = f.ring();
  const VarSet& vars = f.vars();
  auto cmp = [&vars](const ExponentVector& a, const ExponentVector& b) { return vars.compare(a, b) > 0; };
  std::map<ExponentVector, typename Ring::Element, decltype(cmp)> rem(cmp);
  for (const auto& [e, c] : f.terms()) rem.emplace(e, c);

  const auto& [lead_e, lead_c] = g.leading_term();
  const auto lead_inv = ring.inv(lead_c);
  std::vector<typename SparsePoly<Ring>::Term> quotient;
  ExponentVector shift(vars.size());
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!divides(lead_e, it->first)) return std::nullopt;
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = it->first[i] - lead_e[i];
    auto q = ring.mul(it->second, lead_inv);
    quotient.emplace_back(shift, q);
    ExponentVector e(vars.size());
    for (const auto& [ge, gc] : g.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ge[i] + shift[i];
      auto delta = ring.mul(q, gc);
      auto [pos, inserted] = rem.try_emplace(e, ring.neg(delta));
      if (!inserted) {
        pos->second = ring.sub(pos->second, delta);
        if (ring.is_zero(pos->second)) rem.erase(pos);
      }
    }
  }
  return SparsePoly<Ring>::from_terms(f.ring(), vars, std::move(quotient));
}

/// Scales f over Q to coprime integer coefficients with a positive leading
/// coefficient.
inline PolyQ normalize_canonical(const PolyQ& f) {
  if (f.is_zero()) throw std::domain_error("normalize_canonical: zero polynomial");
  BigInt den_lcm = 1;
  for (const auto& t : f.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den_mpz_t());
  BigInt content = 0;
  for (const auto& t : f.terms()) {
    BigInt num = t.second.get_num() * (den_lcm / t.second.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  BigRational scale(den_lcm, content);
  if (sgn(f.leading_term().second) < 0) scale = -scale;
  scale.canonicalize();
  return f.scaled(scale);
}

/// Maps coefficients into another ring; returns nothing if a map fails.
template <class RingOut, class RingIn, class Fn>
std::optional<SparsePoly<RingOut>> map_coefficients(const SparsePoly<RingIn>& f, const RingOut& out, Fn&& fn) {
  std::vector<typename SparsePoly<RingOut>::Term> terms;
  terms.reserve(f.size());
  for (const auto& [e, c] : f.terms()) {
    std::optional<typename RingOut::Element> v = fn(c);
    if (!v) return std::nullopt;
    terms.emplace_back(e, *v);
  }
  return SparsePoly<RingOut>::from_terms(out, f.vars(), std::move(terms));
}

/// Image of a rational polynomial in Z/pZ[vars]; nothing if p divides a denominator.
inline std::optional<PolyP> reduce_mod(const PolyQ& f, const PrimeField& field) {
  return map_coefficients(f, field, [&field](const BigRational& q) -> std::optional<u64> {
    u64 v;
    if (!rational_mod_p(q, field, v)) return std::nullopt;
    return v;
  });
}

/// Re-expresses f in a different variable set via an index map
/// (target[i] = position in `to` of variable i of f's set).
template <class Ring>
SparsePoly<Ring> embed(const SparsePoly<Ring>& f, const VarSet& to, std::span<const std::size_t> target) {
  std::vector<typename SparsePoly<Ring>::Term> terms;
  terms.reserve(f.size());
  for (const auto& [e, c] : f.terms()) {
    ExponentVector out(to.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (target[i] >= to.size()) throw std::invalid_argument("embed: variable has no image");
      out[target[i]] += e[i];
    }
    terms.emplace_back(std::move(out), c);
  }
  return SparsePoly<Ring>::from_terms(f.ring(), to, std::move(terms));
}

}  // namespace diffelim
