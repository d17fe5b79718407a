#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffelim/arith/rational.hpp"
#include "diffelim/poly/monomial.hpp"

namespace diffelim {

/// coeffs . e <= rhs over exponent vectors e = (e0, ..., e_nu).
struct Inequality {
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;

  bool satisfied_by(std::span<const Exponent> e) const {
    std::int64_t lhs = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) lhs += coeffs[k] * static_cast<std::int64_t>(e[k]);
    return lhs <= rhs;
  }

  friend bool operator==(const Inequality&, const Inequality&) = default;
};

struct SupportBound {
  int nu = 0;
  std::vector<Inequality> inequalities;

  bool contains(std::span<const Exponent> e) const {
    return std::all_of(inequalities.begin(), inequalities.end(), [&](const Inequality& q) { return q.satisfied_by(e); });
  }
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("support bound: right-hand side overflows 64 bits");
  return r;
}

}  // namespace detail

/// Newton-polytope bound for the minimal polynomial of x1 in terms of
/// d = deg g1, D = max_{i>=2} deg g_i and an order bound nu.
///
/// For d <= D a single inequality
///   e0 + sum_k (d + (k-1)(D-1)) e_k <= prod_k (d + (k-1)(D-1)).
/// For d > D one inequality per l = 0..nu-1:
///   sum_{k<=l} (k(D-1)+1) e_k + sum_{i=1}^{nu-l} (i(d-1) + l(D-1) + 1) e_{i+l}
///     <= prod_{k=1}^{l} (d + (k-1)(D-1)) * prod_{i=1}^{nu-l} (i(d-1) + l(D-1) + 1).
inline SupportBound bound_inequalities(int d, int D, int nu) {
  if (d < 1 || D < 1) throw std::invalid_argument("bound_inequalities: d and D must be positive");
  if (nu < 1) throw std::invalid_argument("bound_inequalities: nu must be positive");
  SupportBound b;
  b.nu = nu;
  const std::int64_t dd = d, DD = D;
  if (d <= D) {
    Inequality q;
    q.coeffs.assign(static_cast<std::size_t>(nu) + 1, 1);
    q.rhs = 1;
    for (int k = 1; k <= nu; ++k) {
      std::int64_t w = dd + (k - 1) * (DD - 1);
      q.coeffs[static_cast<std::size_t>(k)] = w;
      q.rhs = detail::checked_mul(q.rhs, w);
    }
    b.inequalities.push_back(std::move(q));
    return b;
  }
  for (int l = 0; l < nu; ++l) {
    Inequality q;
    q.coeffs.assign(static_cast<std::size_t>(nu) + 1, 0);
    q.rhs = 1;
    for (int k = 0; k <= l; ++k) q.coeffs[static_cast<std::size_t>(k)] = k * (DD - 1) + 1;
    for (int i = 1; i <= nu - l; ++i) {
      std::int64_t w = i * (dd - 1) + l * (DD - 1) + 1;
      q.coeffs[static_cast<std::size_t>(i + l)] = w;
      q.rhs = detail::checked_mul(q.rhs, w);
    }
    for (int k = 1; k <= l; ++k) q.rhs = detail::checked_mul(q.rhs, dd + (k - 1) * (DD - 1));
    b.inequalities.push_back(std::move(q));
  }
  return b;
}

/// One-dimensional case x1' = g1(x1): the minimal polynomial is x1' - g1, so
/// e0 + d e1 <= d with nu = 1.
inline SupportBound bound_inequalities_univariate(int d) {
  if (d < 1) throw std::invalid_argument("bound_inequalities: d must be positive");
  SupportBound b;
  b.nu = 1;
  b.inequalities.push_back(Inequality{{1, d}, d});
  return b;
}

/// Bound used for a system with n equations and degrees (d, D); D is only
/// meaningful for n >= 2.
inline SupportBound bound_for_system(int n, int d, int D, int nu) {
  if (n == 1) return bound_inequalities_univariate(d);
  return bound_inequalities(d, D, nu);
}

/// Weighted bound e0 + sum_i w_i e_i <= floor(prod_k M_k) with
///   M_k = max(w_k, d + (k-1)(D-1), max_{j<k} (d + (k-1)(w_j - 1)/j)),
/// the inner maxima taken over the rationals.
inline Inequality general_bound_inequality(int d, int D, int nu, std::span<const std::int64_t> omega) {
  if (d < 1 || D < 1) throw std::invalid_argument("general_bound_inequality: d and D must be positive");
  if (nu < 1) throw std::invalid_argument("general_bound_inequality: nu must be positive");
  if (omega.size() != static_cast<std::size_t>(nu))
    throw std::invalid_argument("general_bound_inequality: omega must have nu entries");
  for (auto w : omega)
    if (w < 0) throw std::invalid_argument("general_bound_inequality: omega entries must be nonnegative");

  BigRational product = 1;
  for (int k = 1; k <= nu; ++k) {
    BigRational m = BigRational(static_cast<long>(omega[static_cast<std::size_t>(k - 1)]));
    m = std::max(m, BigRational(static_cast<long>(d + (k - 1) * (D - 1))));
    for (int j = 1; j < k; ++j) {
      BigRational cand(static_cast<long>(k - 1) * (omega[static_cast<std::size_t>(j - 1)] - 1), static_cast<long>(j));
      cand.canonicalize();
      cand += d;
      m = std::max(m, cand);
    }
    product *= m;
  }
  BigInt floor_rhs;
  mpz_fdiv_q(floor_rhs.get_mpz_t(), product.get_num_mpz_t(), product.get_den_mpz_t());
  if (!floor_rhs.fits_slong_p()) throw std::overflow_error("general_bound_inequality: right-hand side overflows");

  Inequality q;
  q.coeffs.push_back(1);
  q.coeffs.insert(q.coeffs.end(), omega.begin(), omega.end());
  q.rhs = floor_rhs.get_si();
  return q;
}

namespace detail {

// Visits every lattice line of the bound: coordinates are chosen from e_nu
// down to e1 with per-inequality residual capacities pruning the ranges, and
// visit(e, cap) is called once with e0 = 0 for the admissible e0 in [0, cap].
template <class Visit>
void visit_lattice_rows(const SupportBound& bound, Visit&& visit) {
  const std::size_t dim = static_cast<std::size_t>(bound.nu) + 1;
  for (const auto& q : bound.inequalities) {
    if (q.coeffs.size() != dim) throw std::invalid_argument("enumerate: inequality dimension mismatch");
    for (auto c : q.coeffs)
      if (c < 1) throw std::invalid_argument("enumerate: unbounded region (nonpositive coefficient)");
    if (q.rhs < 0) return;
  }
  std::vector<std::int64_t> residual;
  for (const auto& q : bound.inequalities) residual.push_back(q.rhs);
  ExponentVector e(dim, 0);

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    std::int64_t cap = INT64_MAX;
    for (std::size_t i = 0; i < residual.size(); ++i)
      cap = std::min(cap, residual[i] / bound.inequalities[i].coeffs[pos]);
    if (pos == 0) {
      visit(e, cap);
      return;
    }
    for (std::int64_t v = 0; v <= cap; ++v) {
      e[pos] = static_cast<Exponent>(v);
      for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= v * bound.inequalities[i].coeffs[pos];
      self(self, pos - 1);
      for (std::size_t i = 0; i < residual.size(); ++i) residual[i] += v * bound.inequalities[i].coeffs[pos];
    }
    e[pos] = 0;
  };
  rec(rec, dim - 1);
}

}  // namespace detail

/// All lattice points of the bound in increasing graded-lex order
/// (precedence x1^(nu) > ... > x1).
inline std::vector<ExponentVector> enumerate(const SupportBound& bound) {
  std::vector<ExponentVector> points;
  detail::visit_lattice_rows(bound, [&](const ExponentVector& e, std::int64_t cap) {
    ExponentVector p = e;
    for (std::int64_t v = 0; v <= cap; ++v) {
      p[0] = static_cast<Exponent>(v);
      points.push_back(p);
    }
  });
  const VarSet vars = VarSet::derivative(bound.nu);
  std::sort(points.begin(), points.end(), [&](const ExponentVector& a, const ExponentVector& b) { return vars.less(a, b); });
  return points;
}

/// Number of lattice points, without materializing them.
inline std::uint64_t count(const SupportBound& bound) {
  std::uint64_t total = 0;
  detail::visit_lattice_rows(bound, [&](const ExponentVector&, std::int64_t cap) {
    total += static_cast<std::uint64_t>(cap) + 1;
  });
  return total;
}

/// Human-readable form, e.g. `e0 + 2*e1 + 3*e2 <= 6`.
inline std::string render(const Inequality& q) {
  std::string out;
  for (std::size_t k = 0; k < q.coeffs.size(); ++k) {
    if (q.coeffs[k] == 0) continue;
    if (!out.empty()) out += " + ";
    if (q.coeffs[k] != 1) out += std::to_string(q.coeffs[k]) + "*";
    out += "e" + std::to_string(k);
  }
  if (out.empty()) out = "0";
  return out + " <= " + std::to_string(q.rhs);
}

}  // namespace diffelim
