#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "diffelim/arith/rng.hpp"

namespace diffelim {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin; the base set {2, ..., 37} is exact below 3.3e24.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kSmall) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kSmall) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Uniformly drawn prime in [2^(bits-1), 2^bits).
inline u64 random_prime(int bits, Rng& rng) {
  if (bits < 3 || bits > 62) throw std::invalid_argument("random_prime: bits must lie in [3, 62]");
  const u64 lo = u64{1} << (bits - 1);
  const u64 hi = (u64{1} << bits) - 1;
  for (;;) {
    u64 candidate = rng.uniform_u64(lo, hi) | 1;
    if (candidate > hi) continue;
    if (is_prime_u64(candidate)) return candidate;
  }
}

/// Arithmetic in Z/pZ for a word-sized prime p < 2^62. Elements are plain
/// u64 values kept in [0, p).
class PrimeField {
 public:
  using Element = u64;

  PrimeField() = default;
  explicit PrimeField(u64 p) : p_(p) {
    if (p < 2 || p >= (u64{1} << 62)) throw std::invalid_argument("PrimeField: modulus out of range");
  }

  u64 modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1 % p_; }

  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }

  Element add(Element a, Element b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return mulmod(a, b, p_); }
  Element pow(Element a, u64 e) const { return powmod(a, e, p_); }

  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // extended Euclid on signed 128-bit to stay exact for 62-bit moduli
    __int128 t = 0, new_t = 1;
    __int128 r = p_, new_r = a;
    while (new_r != 0) {
      __int128 q = r / new_r;
      __int128 tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (r != 1) throw std::domain_error("PrimeField: element not invertible");
    if (t < 0) t += p_;
    return static_cast<u64>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }

  std::string to_string(Element a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  u64 p_ = 2;
};

/// Multiplication by a fixed element with a precomputed quotient (Shoup's
/// trick). Used for row updates in elimination where the multiplier is fixed
/// across a whole row.
class ShoupMultiplier {
 public:
  ShoupMultiplier(u64 w, u64 p) : w_(w), p_(p), w_pre_(static_cast<u64>((static_cast<u128>(w) << 64) / p)) {}

  u64 operator()(u64 x) const {
    u64 q = static_cast<u64>((static_cast<u128>(w_pre_) * x) >> 64);
    // r lies in [0, 2p); the sign-mask correction avoids a data-dependent branch
    u64 r = w_ * x - q * p_ - p_;
    return r + (p_ & static_cast<u64>(static_cast<std::int64_t>(r) >> 63));
  }

 private:
  u64 w_;
  u64 p_;
  u64 w_pre_;
};

}  // namespace diffelim
