#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffelim {

using Exponent = std::uint32_t;
using ExponentVector = std::vector<Exponent>;

inline std::uint64_t total_degree(const ExponentVector& e) {
  std::uint64_t s = 0;
  for (auto v : e) s += v;
  return s;
}

struct ExponentHash {
  std::size_t operator()(const ExponentVector& e) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : e) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Variable regimes.
///  - state:      x1 > x2 > ... > xn
///  - derivative: x1^(nu) > ... > x1' > x1, stored at indices 0..nu (index k = k-th derivative)
///  - mixed:      x1^(K) > ... > x1 > x2 > ... > xn, stored as [x1^(0..K), x2..xn]
enum class Regime { state, derivative, mixed };

class VarSet {
 public:
  static VarSet state(int n) { return VarSet(Regime::state, n, 0, "x1"); }
  static VarSet derivative(int order, std::string base = "x1") {
    return VarSet(Regime::derivative, 1, order, std::move(base));
  }
  static VarSet mixed(int n, int order) { return VarSet(Regime::mixed, n, order, "x1"); }

  Regime regime() const { return regime_; }
  int n() const { return n_; }
  int order() const { return order_; }
  const std::string& base() const { return base_; }

  std::size_t size() const {
    switch (regime_) {
      case Regime::state: return static_cast<std::size_t>(n_);
      case Regime::derivative: return static_cast<std::size_t>(order_ + 1);
      case Regime::mixed: return static_cast<std::size_t>(order_ + 1 + n_ - 1);
    }
    return 0;
  }

  // Index of the variable with the given precedence rank (0 = highest).
  std::size_t index_at_rank(std::size_t rank) const {
    switch (regime_) {
      case Regime::state: return rank;
      case Regime::derivative: return static_cast<std::size_t>(order_) - rank;
      case Regime::mixed:
        if (rank <= static_cast<std::size_t>(order_)) return static_cast<std::size_t>(order_) - rank;
        return rank;
    }
    return rank;
  }

  std::string name(std::size_t i) const {
    switch (regime_) {
      case Regime::state: return "x" + std::to_string(i + 1);
      case Regime::derivative: return derivative_name(base_, static_cast<int>(i));
      case Regime::mixed:
        if (i <= static_cast<std::size_t>(order_)) return derivative_name(base_, static_cast<int>(i));
        return "x" + std::to_string(i - static_cast<std::size_t>(order_) + 1);
    }
    return {};
  }

  static std::string derivative_name(const std::string& base, int k) {
    if (k == 0) return base;
    if (k == 1) return base + "'";
    if (k == 2) return base + "''";
    return base + "^(" + std::to_string(k) + ")";
  }

  /// Graded lexicographic comparison: negative if a < b, zero if equal.
  int compare(const ExponentVector& a, const ExponentVector& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t r = 0; r < a.size(); ++r) {
      std::size_t i = index_at_rank(r);
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  bool less(const ExponentVector& a, const ExponentVector& b) const { return compare(a, b) < 0; }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.regime_ == b.regime_ && a.n_ == b.n_ && a.order_ == b.order_ && a.base_ == b.base_;
  }

 private:
  VarSet(Regime r, int n, int order, std::string base) : regime_(r), n_(n), order_(order), base_(std::move(base)) {
    if (n < 1) throw std::invalid_argument("VarSet: need at least one state variable");
    if (order < 0) throw std::invalid_argument("VarSet: negative derivative order");
  }

  Regime regime_;
  int n_;
  int order_;
  std::string base_;
};

}  // namespace diffelim
