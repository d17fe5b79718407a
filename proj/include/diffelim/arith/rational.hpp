#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "diffelim/arith/prime_field.hpp"

namespace diffelim {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big_from_u64(u64 v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

inline u64 big_mod_u64(const BigInt& v, u64 p) {
  BigInt r;
  BigInt pm = big_from_u64(p);
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), pm.get_mpz_t());
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

/// Parses an exact rational literal: integers, `a/b`, and decimals such as
/// `0.0357` (converted to 357/10000, reduced).
inline BigRational parse_rational_literal(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty numeric literal");
  auto dot = s.find('.');
  auto slash = s.find('/');
  BigRational q;
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed decimal literal '" + s + "'");
    BigInt num(digits, 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    q = BigRational(num, den);
  } else if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash), 10);
    BigInt den(s.substr(slash + 1), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q = BigRational(num, den);
  } else {
    if (s.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed integer literal '" + s + "'");
    q = BigRational(BigInt(s, 10));
  }
  q.canonicalize();
  return q;
}

inline std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Coefficient ring of exact rationals.
struct Rationals {
  using Element = BigRational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element div(const Element& a, const Element& b) const {
    if (b == 0) throw std::domain_error("Rationals: division by zero");
    return a / b;
  }
  Element inv(const Element& a) const { return div(one(), a); }
  Element pow(const Element& a, std::uint64_t e) const {
    Element r = 1;
    Element b = a;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string to_string(const Element& a) const { return diffelim::to_string(a); }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

/// Image of a rational in Z/pZ; fails when p divides the denominator.
inline bool rational_mod_p(const BigRational& q, const PrimeField& field, u64& out) {
  u64 den = big_mod_u64(q.get_den(), field.modulus());
  if (den == 0) return false;
  u64 num = big_mod_u64(q.get_num(), field.modulus());
  out = field.div(num, den);
  return true;
}

}  // namespace diffelim
