#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffelim/poly/sparse_poly.hpp"

namespace diffelim {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t limit)
      : std::runtime_error("term budget of " + std::to_string(limit) +
                           " exceeded during symbolic reduction; result indeterminate, raise the budget"),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

/// Ceiling on intermediate polynomial size; 0 disables the check.
struct TermBudget {
  std::size_t max_terms = 0;

  template <class P>
  void check(const P& p) const {
    if (max_terms && p.size() > max_terms) throw BudgetExceeded(max_terms);
  }
};

/// L_g f = sum_i g_i * df/dx_i for f in x1..xn.
template <class Ring>
SparsePoly<Ring> lie_derivative(std::span<const SparsePoly<Ring>> g, const SparsePoly<Ring>& f) {
  if (f.vars().regime() != Regime::state || f.vars().size() != g.size())
    throw std::invalid_argument("lie_derivative: polynomial must be in the state variables x1..xn");
  SparsePoly<Ring> acc(f.ring(), f.vars());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (f.degree_in(i) == 0) continue;
    acc = acc + g[i] * partial_derivative(f, i);
  }
  return acc;
}

/// [x1, L_g x1, ..., L_g^count x1]
template <class Ring>
std::vector<SparsePoly<Ring>> lie_iterates(std::span<const SparsePoly<Ring>> g, int count,
                                           const TermBudget& budget = {}) {
  if (g.empty()) throw std::invalid_argument("lie_iterates: empty system");
  const VarSet vars = g.front().vars();
  std::vector<SparsePoly<Ring>> out;
  out.push_back(SparsePoly<Ring>::variable(g.front().ring(), vars, 0));
  for (int k = 0; k < count; ++k) {
    out.push_back(lie_derivative(g, out.back()));
    budget.check(out.back());
  }
  return out;
}

/// Embeds a state polynomial into the mixed set [x1^(0..order), x2..xn], reading x1 as x1^(0).
template <class Ring>
SparsePoly<Ring> state_to_mixed(const SparsePoly<Ring>& f, int order) {
  const int n = f.vars().n();
  VarSet mixed = VarSet::mixed(n, order);
  std::vector<std::size_t> target(static_cast<std::size_t>(n));
  target[0] = 0;
  for (int i = 1; i < n; ++i) target[static_cast<std::size_t>(i)] = static_cast<std::size_t>(order + i);
  return embed(f, mixed, target);
}

/// L*_g = sum_{i>=2} g_i d/dx_i + sum_k x1^(k+1) d/dx1^(k), acting on the
/// mixed regime. The result lives in the mixed set of one higher order.
template <class Ring>
SparsePoly<Ring> lie_star(std::span<const SparsePoly<Ring>> g, const SparsePoly<Ring>& f) {
  const VarSet& in = f.vars();
  if (in.regime() != Regime::mixed || static_cast<std::size_t>(in.n()) != g.size())
    throw std::invalid_argument("lie_star: polynomial must be in the mixed regime of the system");
  const int order = in.order();
  const int n = in.n();
  const VarSet out_vars = VarSet::mixed(n, order + 1);
  std::vector<std::size_t> lift(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) lift[i] = i <= static_cast<std::size_t>(order) ? i : i + 1;
  const SparsePoly<Ring> f_up = embed(f, out_vars, lift);

  SparsePoly<Ring> acc(f.ring(), out_vars);
  for (int i = 1; i < n; ++i) {
    std::size_t idx = static_cast<std::size_t>(order + 1 + i);
    if (f_up.degree_in(idx) == 0) continue;
    acc = acc + state_to_mixed(g[static_cast<std::size_t>(i)], order + 1) * partial_derivative(f_up, idx);
  }
  for (int k = 0; k <= order; ++k) {
    std::size_t idx = static_cast<std::size_t>(k);
    if (f_up.degree_in(idx) == 0) continue;
    acc = acc + SparsePoly<Ring>::variable(f.ring(), out_vars, idx + 1) * partial_derivative(f_up, idx);
  }
  return acc;
}

namespace detail {

template <class Ring>
SparsePoly<Ring> reduce_horner(const std::vector<typename SparsePoly<Ring>::Term>& terms, std::size_t top,
                               const std::vector<SparsePoly<Ring>>& iterates, const VarSet& state,
                               const Ring& ring, const TermBudget& budget) {
  if (terms.empty()) return SparsePoly<Ring>(ring, state);
  if (top == 0) {
    std::vector<typename SparsePoly<Ring>::Term> out;
    for (const auto& [e, c] : terms) {
      ExponentVector s(state.size(), 0);
      s[0] = e[0];
      out.emplace_back(std::move(s), c);
    }
    return SparsePoly<Ring>::from_terms(ring, state, std::move(out));
  }
  // Group by the exponent of the top derivative; zero it in the grouped terms.
  std::map<Exponent, std::vector<typename SparsePoly<Ring>::Term>> groups;
  for (const auto& [e, c] : terms) {
    ExponentVector rest = e;
    rest[top] = 0;
    groups[e[top]].emplace_back(std::move(rest), c);
  }
  const Exponent emax = groups.rbegin()->first;
  SparsePoly<Ring> acc = reduce_horner(groups[emax], top - 1, iterates, state, ring, budget);
  for (Exponent e = emax; e-- > 0;) {
    acc = acc * iterates[top];
    budget.check(acc);
    auto it = groups.find(e);
    if (it != groups.end()) acc = acc + reduce_horner(it->second, top - 1, iterates, state, ring, budget);
    budget.check(acc);
  }
  return acc;
}

}  // namespace detail

/// R_g: substitutes x1^(k) -> L_g^k(x1) and expands. Uses Horner's scheme in
/// the highest derivative first, descending, so cancellation happens early.
template <class Ring>
SparsePoly<Ring> reduction(std::span<const SparsePoly<Ring>> g, const SparsePoly<Ring>& f,
                           const TermBudget& budget = {}) {
  if (f.vars().regime() != Regime::derivative)
    throw std::invalid_argument("reduction: polynomial must be in the derivative variables of x1");
  if (g.empty()) throw std::invalid_argument("reduction: empty system");
  const int order = f.vars().order();
  auto iterates = lie_iterates(g, order, budget);
  return detail::reduce_horner(f.terms(), static_cast<std::size_t>(order), iterates, g.front().vars(), f.ring(),
                               budget);
}

}  // namespace diffelim
