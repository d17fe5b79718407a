#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "diffelim/arith/rng.hpp"
#include "diffelim/interp/linalg.hpp"
#include "diffelim/ode/jet.hpp"
#include "diffelim/poly/sparse_poly.hpp"

namespace diffelim {

using IntPoint = std::vector<std::int64_t>;

/// `count` distinct points of Z^n with coordinates uniform on [-radius, radius].
inline std::vector<IntPoint> sample_points(Rng& rng, std::int64_t radius, std::size_t count, int n) {
  if (radius < 1) throw std::invalid_argument("sample_points: radius must be >= 1");
  if (n < 1) throw std::invalid_argument("sample_points: dimension must be >= 1");
  // refuse requests that cannot be met with distinct points
  long double available = 1;
  for (int i = 0; i < n; ++i) available *= static_cast<long double>(2 * radius + 1);
  if (available < static_cast<long double>(count))
    throw std::invalid_argument("sample_points: radius too small for the requested number of distinct points");
  std::set<IntPoint> seen;
  std::vector<IntPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    IntPoint p(static_cast<std::size_t>(n));
    for (auto& v : p) v = rng.uniform(-radius, radius);
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<u64> reduce_point(const IntPoint& p, const PrimeField& field) {
  std::vector<u64> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = field.from_int(p[i]);
  return out;
}

/// Evaluation matrix N[j][i] = s_i(jet(p_j)), i.e. R_g(s_i)(p_j): rows are
/// sample points, columns monomials in x1^(0..nu). Kernel vectors c satisfy
/// sum_i c_i R_g(s_i)(p_j) = 0 for all j.
inline ModMatrix assemble(std::span<const PolyP> g, std::span<const ExponentVector> monomials,
                          std::span<const IntPoint> points, int nu) {
  if (g.empty()) throw std::invalid_argument("assemble: empty system");
  const PrimeField field = g.front().ring();
  if (field.modulus() <= static_cast<u64>(nu)) throw std::invalid_argument("assemble: prime must exceed nu");
  const std::size_t width = static_cast<std::size_t>(nu) + 1;
  std::vector<Exponent> max_exp(width, 0);
  for (const auto& s : monomials) {
    if (s.size() != width) throw std::invalid_argument("assemble: monomial length does not match nu");
    for (std::size_t k = 0; k < width; ++k) max_exp[k] = std::max(max_exp[k], s[k]);
  }
  ModMatrix m(field, points.size(), monomials.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    auto base = reduce_point(points[j], field);
    auto values = jet_mod_p(g, base, nu);
    PowerTable<PrimeField> table(field, values, max_exp);
    auto row = m.row(j);
    for (std::size_t i = 0; i < monomials.size(); ++i) row[i] = table.monomial(monomials[i]);
  }
  return m;
}

struct MinimalElement {
  enum class Status { found, empty, anomaly };
  Status status = Status::empty;
  std::vector<u64> coeffs;  // length = number of columns, coefficient 1 at `leading`
  std::size_t leading = 0;  // column of the graded-lex leading monomial
};

/// Minimal-degree kernel element of N, columns ordered by increasing
/// graded-lex order of `monomials`.
///
/// Eliminating columns left to right, the first column without a pivot is
/// the smallest leading monomial of any kernel element; since every kernel
/// element is a multiple of the minimal polynomial, that column carries it.
/// Elimination continues through the rest of that total-degree stratum: a
/// second free column of the same degree means the sample is degenerate.
inline MinimalElement minimal_element(ModMatrix m, std::span<const ExponentVector> monomials) {
  if (monomials.size() != m.cols()) throw std::invalid_argument("minimal_element: column count mismatch");
  for (std::size_t i = 1; i < monomials.size(); ++i)
    if (total_degree(monomials[i]) < total_degree(monomials[i - 1]))
      throw std::invalid_argument("minimal_element: monomials must be in increasing graded order");

  const PrimeField field = m.field();
  const u64 p = field.modulus();
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  std::optional<std::size_t> free_col;
  std::uint64_t stratum = 0;
  MinimalElement result;

  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (free_col && total_degree(monomials[c]) > stratum) break;
    std::size_t sel = rank;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) {
      if (free_col) {
        result.status = MinimalElement::Status::anomaly;
        return result;
      }
      free_col = c;
      stratum = total_degree(monomials[c]);
      continue;
    }
    if (sel != rank) std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(rank).begin());
    detail::normalize_row(m.row(rank), c, field);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      detail::eliminate_row(m.row(r), m.row(rank), m(r, c), c, p);
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  if (!free_col) return result;

  // back substitution: v[free] = 1, pivot rows before the free column
  const std::size_t f = *free_col;
  std::vector<u64> v(m.cols(), 0);
  v[f] = 1;
  std::size_t used = 0;
  while (used < pivot_cols.size() && pivot_cols[used] < f) ++used;
  for (std::size_t i = used; i-- > 0;) {
    auto row = m.row(i);
    u128 acc = 0;
    std::size_t count = 0;
    for (std::size_t c = pivot_cols[i] + 1; c <= f; ++c) {
      if (v[c] == 0 || row[c] == 0) continue;
      acc += static_cast<u128>(row[c]) * v[c];
      if (++count == 8) {
        acc %= p;
        count = 0;
      }
    }
    v[pivot_cols[i]] = field.neg(static_cast<u64>(acc % p));
  }
  result.status = MinimalElement::Status::found;
  result.coeffs = std::move(v);
  result.leading = f;
  return result;
}

}  // namespace diffelim
