#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diffelim/arith/prime_field.hpp"

namespace diffelim {

/// Dense row-major matrix over Z/pZ.
class ModMatrix {
 public:
  ModMatrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  u64& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  u64 operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<u64> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const u64> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  /// Restriction to the given columns (in the given order).
  ModMatrix columns(std::span<const std::size_t> keep) const {
    ModMatrix out(field_, rows_, keep.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < keep.size(); ++j) out(r, j) = (*this)(r, keep[j]);
    return out;
  }

  /// M * v with 128-bit delayed reduction, flushed every 8 products (p < 2^62).
  std::vector<u64> apply(std::span<const u64> v) const {
    if (v.size() != cols_) throw std::invalid_argument("ModMatrix::apply: length mismatch");
    const u64 p = field_.modulus();
    std::vector<u64> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      auto row_r = row(r);
      u128 acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        acc += static_cast<u128>(row_r[c]) * v[c];
        if ((c & 7) == 7) acc %= p;
      }
      out[r] = static_cast<u64>(acc % p);
    }
    return out;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<u64> data_;
};

namespace detail {

// Row r -= factor * pivot row, on columns [from, cols).
inline void eliminate_row(std::span<u64> target, std::span<const u64> pivot, u64 factor, std::size_t from, u64 p) {
  ShoupMultiplier mul(factor, p);
  for (std::size_t c = from; c < target.size(); ++c) {
    u64 d = target[c] - mul(pivot[c]);
    target[c] = d + (p & static_cast<u64>(static_cast<std::int64_t>(d) >> 63));
  }
}

// Scales a row so that its entry at column c becomes 1.
inline void normalize_row(std::span<u64> row, std::size_t c, const PrimeField& field) {
  ShoupMultiplier mul(field.inv(row[c]), field.modulus());
  for (std::size_t j = c; j < row.size(); ++j) row[j] = mul(row[j]);
}

}  // namespace detail

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(ModMatrix& m) {
  const u64 p = m.field().modulus();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t sel = rank;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != rank) std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(rank).begin());
    detail::normalize_row(m.row(rank), c, m.field());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c) == 0) continue;
      detail::eliminate_row(m.row(r), m.row(rank), m(r, c), c, p);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

inline std::size_t rank(ModMatrix m) { return rref(m).size(); }

/// Basis of {c : M c = 0}, one vector per free column, in reduced echelon
/// form (entry 1 at its free column, zero at the other free columns).
inline std::vector<std::vector<u64>> nullspace(ModMatrix m) {
  const PrimeField field = m.field();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(m(i, f));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace diffelim
