#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diffelim/poly/sparse_poly.hpp"

namespace diffelim {

/// Polynomial dynamical system x' = g(x) over Q. The eliminated coordinate
/// is always x1.
class OdeSystem {
 public:
  explicit OdeSystem(std::vector<PolyQ> rhs) : rhs_(std::move(rhs)) {
    if (rhs_.empty()) throw std::invalid_argument("OdeSystem: need at least one equation");
    const VarSet expected = VarSet::state(static_cast<int>(rhs_.size()));
    for (const auto& g : rhs_)
      if (!(g.vars() == expected)) throw std::invalid_argument("OdeSystem: right-hand side not in x1..xn");
    d_ = static_cast<int>(rhs_.front().total_degree());
    for (std::size_t i = 1; i < rhs_.size(); ++i) D_ = std::max(D_, static_cast<int>(rhs_[i].total_degree()));
  }

  int n() const { return static_cast<int>(rhs_.size()); }
  const std::vector<PolyQ>& rhs() const { return rhs_; }
  VarSet state_vars() const { return VarSet::state(n()); }

  /// deg g1
  int d() const { return d_; }
  /// max_{i >= 2} deg g_i, or 0 when n = 1
  int D() const { return D_; }

  std::optional<std::vector<PolyP>> reduce(const PrimeField& field) const {
    std::vector<PolyP> out;
    out.reserve(rhs_.size());
    for (const auto& g : rhs_) {
      auto r = reduce_mod(g, field);
      if (!r) return std::nullopt;
      out.push_back(std::move(*r));
    }
    return out;
  }

  /// Swaps x1 and x_target (1-based), so that x_target becomes the eliminated coordinate.
  OdeSystem relabeled(int target) const {
    if (target < 1 || target > n()) throw std::out_of_range("OdeSystem::relabeled: no such variable");
    if (target == 1) return *this;
    std::vector<std::size_t> perm(static_cast<std::size_t>(n()));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::swap(perm[0], perm[static_cast<std::size_t>(target - 1)]);
    std::vector<PolyQ> out;
    for (std::size_t i = 0; i < perm.size(); ++i) out.push_back(embed(rhs_[perm[i]], state_vars(), perm));
    return OdeSystem(std::move(out));
  }

  friend bool operator==(const OdeSystem& a, const OdeSystem& b) { return a.rhs_ == b.rhs_; }

 private:
  std::vector<PolyQ> rhs_;
  int d_ = 0;
  int D_ = 0;
};

}  // namespace diffelim
