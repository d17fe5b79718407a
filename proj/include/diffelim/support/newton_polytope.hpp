#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "diffelim/arith/rational.hpp"
#include "diffelim/poly/monomial.hpp"

namespace diffelim {

/// Exact test whether `point` lies in the convex hull of `vertices`:
/// feasibility of  sum_i l_i v_i = point, sum_i l_i = 1, l >= 0, decided by
/// phase-I simplex over the rationals with Bland's rule.
inline bool in_convex_hull(std::span<const ExponentVector> vertices, const ExponentVector& point) {
  if (vertices.empty()) return false;
  const std::size_t dim = point.size();
  const std::size_t m = vertices.size();
  const std::size_t rows = dim + 1;
  const std::size_t cols = m + rows;  // structural + artificial
  // tableau rows: [A | I | b]
  std::vector<std::vector<BigRational>> t(rows, std::vector<BigRational>(cols + 1, BigRational(0)));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t j = 0; j < m; ++j) t[r][j] = vertices[j][r];
    t[r][cols] = point[r];
  }
  for (std::size_t j = 0; j < m; ++j) t[dim][j] = 1;
  t[dim][cols] = 1;
  for (std::size_t r = 0; r < rows; ++r) t[r][m + r] = 1;
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = m + r;

  // reduced costs for minimizing the sum of artificials
  std::vector<BigRational> cost(cols + 1, BigRational(0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < m || j == cols) cost[j] -= t[r][j];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    BigRational best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][enter] <= 0) continue;
      BigRational ratio = t[r][cols] / t[r][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) throw std::logic_error("in_convex_hull: phase-I objective unbounded");
    BigRational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || sgn(t[r][enter]) == 0) continue;
      BigRational f = t[r][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[r][j] -= f * t[leave][j];
    }
    BigRational f = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  // optimum of the phase-I objective is -cost[cols]
  return sgn(cost[cols]) == 0;
}

/// Number of lattice points among `candidates` that lie in the Newton
/// polytope conv(support). Candidates must be a superset of the lattice
/// points of the polytope (e.g. the points of a containing support bound).
inline std::size_t newton_polytope_lattice_count(std::span<const ExponentVector> support,
                                                 std::span<const ExponentVector> candidates) {
  std::unordered_set<ExponentVector, ExponentHash> in_support(support.begin(), support.end());
  if (support.empty()) return 0;
  const std::size_t dim = support.front().size();
  ExponentVector lo(dim, UINT32_MAX), hi(dim, 0);
  for (const auto& s : support)
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], s[k]);
      hi[k] = std::max(hi[k], s[k]);
    }
  std::size_t total = 0;
  for (const auto& c : candidates) {
    if (in_support.count(c)) {
      ++total;
      continue;
    }
    bool in_box = true;
    for (std::size_t k = 0; k < dim; ++k) in_box = in_box && c[k] >= lo[k] && c[k] <= hi[k];
    if (in_box && in_convex_hull(support, c)) ++total;
  }
  return total;
}

}  // namespace diffelim
