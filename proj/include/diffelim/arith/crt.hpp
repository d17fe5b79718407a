#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "diffelim/arith/rational.hpp"

namespace diffelim {

/// Residue vector known modulo the product of the absorbed primes.
struct CrtAccumulator {
  BigInt modulus = 1;
  std::vector<BigInt> residues;
  std::vector<u64> primes;

  CrtAccumulator() = default;
  explicit CrtAccumulator(std::size_t length) : residues(length, BigInt(0)) {}
};

/// Lifts acc to modulus acc.modulus * p so that every entry is congruent to
/// the old residue modulo acc.modulus and to residues[i] modulo p.
inline CrtAccumulator crt_absorb(const CrtAccumulator& acc, std::span<const u64> residues, u64 p) {
  if (acc.residues.size() != residues.size())
    throw std::invalid_argument("crt_absorb: residue vector length mismatch");
  if (p < 2) throw std::invalid_argument("crt_absorb: modulus must be >= 2");
  const u64 m_mod_p = big_mod_u64(acc.modulus, p);
  BigInt g;
  BigInt pm = big_from_u64(p);
  mpz_gcd(g.get_mpz_t(), acc.modulus.get_mpz_t(), pm.get_mpz_t());
  if (g != 1) throw std::invalid_argument("crt_absorb: modulus not coprime to accumulated modulus");

  PrimeField field(p);
  const u64 m_inv = field.inv(m_mod_p);
  CrtAccumulator out;
  out.modulus = acc.modulus * pm;
  out.primes = acc.primes;
  out.primes.push_back(p);
  out.residues.resize(residues.size());
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const BigInt& a = acc.residues[i];
    u64 a_mod_p = big_mod_u64(a, p);
    u64 r = residues[i] % p;
    u64 t = field.mul(field.sub(r, a_mod_p), m_inv);
    out.residues[i] = a + acc.modulus * big_from_u64(t);
  }
  return out;
}

/// Half-extended Euclidean rational reconstruction with the symmetric bound
/// |a|, b <= sqrt(m/2). Returns a/b with a * b^-1 = r (mod m), or nothing.
inline std::optional<BigRational> rational_reconstruct(const BigInt& r, const BigInt& m) {
  if (m < 2) throw std::invalid_argument("rational_reconstruct: modulus must be >= 2");
  BigInt bound;
  BigInt half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());

  BigInt r0 = m, r1 = r % m;
  if (r1 < 0) r1 += m;
  BigInt t0 = 0, t1 = 1;
  BigInt q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0) return std::nullopt;
  BigInt abs_t = abs(t1);
  if (abs_t > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), abs_t.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  BigRational out(t1 < 0 ? BigInt(-r1) : r1, abs_t);
  out.canonicalize();
  return out;
}

}  // namespace diffelim
