#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "diffelim/poly/sparse_poly.hpp"

namespace diffelim {

namespace detail {

// a * b truncated to `len` coefficients
template <class Ring>
std::vector<typename Ring::Element> series_mul(const Ring& ring, const std::vector<typename Ring::Element>& a,
                                               const std::vector<typename Ring::Element>& b, std::size_t len) {
  std::vector<typename Ring::Element> out(len, ring.zero());
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (ring.is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
  }
  return out;
}

}  // namespace detail

/// Derivative values (x1(0), x1'(0), ..., x1^(nu)(0)) along the trajectory of
/// x' = g(x) through `base`, from the truncated power series solution.
///
/// If x is known mod t^(k+1) then g(x) mod t^(k+1) determines the t^(k+1)
/// coefficient of x via x' = g(x); one coefficient is added per step. Requires
/// 1, ..., nu to be invertible in the ring.
template <class Ring>
std::vector<typename Ring::Element> jet(std::span<const SparsePoly<Ring>> g,
                                        std::span<const typename Ring::Element> base, int nu) {
  using Coeff = typename Ring::Element;
  if (g.empty()) throw std::invalid_argument("jet: empty system");
  if (base.size() != g.size()) throw std::invalid_argument("jet: base point dimension mismatch");
  if (nu < 0) throw std::invalid_argument("jet: negative order");
  const Ring& ring = g.front().ring();
  const std::size_t n = g.size();
  const std::size_t len = static_cast<std::size_t>(nu) + 1;

  std::vector<Exponent> max_deg(n, 0);
  for (const auto& gi : g)
    for (std::size_t v = 0; v < n; ++v) max_deg[v] = std::max(max_deg[v], gi.degree_in(v));

  std::vector<std::vector<Coeff>> x(n, std::vector<Coeff>(len, ring.zero()));
  for (std::size_t i = 0; i < n; ++i) x[i][0] = base[i];

  for (std::size_t k = 0; k + 1 < len; ++k) {
    const std::size_t trunc = k + 1;
    // powers[v][e] = x_v^e mod t^trunc
    std::vector<std::vector<std::vector<Coeff>>> powers(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<Coeff> one(trunc, ring.zero());
      one[0] = ring.one();
      powers[v].push_back(std::move(one));
      for (Exponent e = 1; e <= max_deg[v]; ++e) powers[v].push_back(detail::series_mul(ring, powers[v].back(), x[v], trunc));
    }
    const Coeff inv_k1 = ring.inv(ring.from_int(static_cast<std::int64_t>(k + 1)));
    for (std::size_t i = 0; i < n; ++i) {
      // only the t^k coefficient of g_i(x) is needed
      Coeff coeff_k = ring.zero();
      for (const auto& [e, c] : g[i].terms()) {
        std::vector<Coeff> prod(trunc, ring.zero());
        prod[0] = c;
        for (std::size_t v = 0; v < n; ++v)
          if (e[v]) prod = detail::series_mul(ring, prod, powers[v][e[v]], trunc);
        coeff_k = ring.add(coeff_k, prod[k]);
      }
      x[i][k + 1] = ring.mul(coeff_k, inv_k1);
    }
  }

  std::vector<Coeff> out(len);
  Coeff factorial = ring.one();
  for (std::size_t k = 0; k < len; ++k) {
    if (k > 0) factorial = ring.mul(factorial, ring.from_int(static_cast<std::int64_t>(k)));
    out[k] = ring.mul(factorial, x[0][k]);
  }
  return out;
}

/// Jet over Z/pZ; rejects p <= nu since k! must be invertible.
inline std::vector<u64> jet_mod_p(std::span<const PolyP> g, std::span<const u64> base, int nu) {
  if (g.empty()) throw std::invalid_argument("jet: empty system");
  if (g.front().ring().modulus() <= static_cast<u64>(nu))
    throw std::invalid_argument("jet: prime must exceed the jet order");
  return jet<PrimeField>(g, base, nu);
}

}  // namespace diffelim
