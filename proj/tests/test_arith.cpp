#include <gtest/gtest.h>

#include <numeric>

#include "test_util.hpp"

using namespace diffelim;

namespace {

bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

}  // namespace

TEST(PrimeSelection, ThreeBitsGivesFiveOrSeven) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    u64 p = random_prime(3, rng);
    EXPECT_TRUE(p == 5 || p == 7) << p;
  }
}

TEST(PrimeSelection, SixtyTwoBitsInRange) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    u64 p = random_prime(62, rng);
    EXPECT_GE(p, u64{1} << 61);
    EXPECT_LT(p, u64{1} << 62);
  }
}

TEST(PrimeSelection, AgreesWithTrialDivision) {
  Rng rng(3);
  for (int bits = 4; bits <= 20; ++bits)
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(trial_division_prime(random_prime(bits, rng)));
  for (u64 n = 0; n < 20000; ++n) EXPECT_EQ(is_prime_u64(n), trial_division_prime(n)) << n;
}

TEST(PrimeSelection, KnownLargeComposites) {
  EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime_u64(u64{4611686018427387903}));  // 2^62 - 1
  EXPECT_TRUE(is_prime_u64(u64{4611686018427387847}));   // largest prime below 2^62
}

TEST(PrimeSelection, RejectsBadBitCounts) {
  Rng rng(0);
  EXPECT_THROW(random_prime(2, rng), std::invalid_argument);
  EXPECT_THROW(random_prime(63, rng), std::invalid_argument);
}

TEST(PrimeFieldAxioms, RandomTriples) {
  Rng rng(4);
  for (int bits : {17, 31, 62}) {
    PrimeField f(random_prime(bits, rng));
    for (int i = 0; i < 10000; ++i) {
      u64 x = rng.uniform_u64(0, f.modulus() - 1), y = rng.uniform_u64(0, f.modulus() - 1),
          z = rng.uniform_u64(0, f.modulus() - 1);
      ASSERT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
      ASSERT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
      ASSERT_EQ(f.add(x, f.neg(x)), 0u);
      if (x != 0) {
        ASSERT_EQ(f.mul(x, f.inv(x)), 1u);
      }
    }
  }
}

TEST(PrimeFieldAxioms, FromIntAndShoup) {
  PrimeField f(97);
  EXPECT_EQ(f.from_int(-1), 96u);
  EXPECT_EQ(f.from_int(-97), 0u);
  EXPECT_EQ(f.from_int(200), 6u);
  EXPECT_THROW(f.inv(0), std::domain_error);
  Rng rng(5);
  PrimeField g(random_prime(62, rng));
  for (int i = 0; i < 1000; ++i) {
    u64 w = rng.uniform_u64(0, g.modulus() - 1), x = rng.uniform_u64(0, g.modulus() - 1);
    ASSERT_EQ(ShoupMultiplier(w, g.modulus())(x), g.mul(w, x));
  }
}

TEST(RationalLiterals, DecimalsAreExact) {
  EXPECT_EQ(parse_rational_literal("0.456"), BigRational(57, 125));
  EXPECT_EQ(parse_rational_literal("0.0357"), BigRational(357, 10000));
  EXPECT_EQ(parse_rational_literal("12"), BigRational(12));
  EXPECT_EQ(parse_rational_literal("6/4"), BigRational(3, 2));
  EXPECT_EQ(to_string(BigRational(-3, 2)), "-3/2");
}

TEST(RationalModP, DenominatorDivisibleByPrime) {
  PrimeField f(7);
  u64 out = 0;
  EXPECT_TRUE(rational_mod_p(BigRational(1, 3), f, out));
  EXPECT_EQ(f.mul(out, 3), 1u);
  EXPECT_FALSE(rational_mod_p(BigRational(1, 14), f, out));
}

TEST(Crt, BaseCase) {
  CrtAccumulator acc(1);
  std::vector<u64> r{3};
  auto out = crt_absorb(acc, r, 7);
  EXPECT_EQ(out.modulus, 7);
  EXPECT_EQ(out.residues[0], 3);
}

TEST(Crt, MatchesExhaustiveSearch) {
  for (u64 a = 0; a < 5; ++a)
    for (u64 b = 0; b < 7; ++b) {
      CrtAccumulator acc(1);
      acc = crt_absorb(acc, std::vector<u64>{a}, 5);
      acc = crt_absorb(acc, std::vector<u64>{b}, 7);
      int expected = -1;
      for (int x = 0; x < 35; ++x)
        if (x % 5 == static_cast<int>(a) && x % 7 == static_cast<int>(b)) expected = x;
      EXPECT_EQ(acc.residues[0], expected);
    }
  CrtAccumulator acc(1);
  acc = crt_absorb(acc, std::vector<u64>{2}, 5);
  acc = crt_absorb(acc, std::vector<u64>{3}, 7);
  EXPECT_EQ(acc.residues[0], 17);
  EXPECT_EQ(acc.modulus, 35);
}

TEST(Crt, Errors) {
  CrtAccumulator acc(2);
  EXPECT_THROW(crt_absorb(acc, std::vector<u64>{1}, 7), std::invalid_argument);
  acc = crt_absorb(acc, std::vector<u64>{1, 2}, 7);
  EXPECT_THROW(crt_absorb(acc, std::vector<u64>{1, 2}, 7), std::invalid_argument);
}

TEST(Crt, ResiduesReduceToEachPrime) {
  Rng rng(6);
  CrtAccumulator acc(20);
  std::vector<std::pair<u64, std::vector<u64>>> history;
  for (int k = 0; k < 6; ++k) {
    u64 p = random_prime(62, rng);
    std::vector<u64> r(20);
    for (auto& v : r) v = rng.uniform_u64(0, p - 1);
    acc = crt_absorb(acc, r, p);
    history.emplace_back(p, r);
  }
  ASSERT_EQ(acc.primes.size(), 6u);
  for (const auto& [p, r] : history)
    for (std::size_t i = 0; i < r.size(); ++i) {
      EXPECT_EQ(big_mod_u64(acc.residues[i], p), r[i]);
      EXPECT_GE(acc.residues[i], 0);
      EXPECT_LT(acc.residues[i], acc.modulus);
    }
}

TEST(RationalReconstruction, InverseOfThree) {
  auto q = rational_reconstruct(65, 97);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, BigRational(1, 3));
}

TEST(RationalReconstruction, Zero) {
  auto q = rational_reconstruct(0, 101);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, 0);
}

TEST(RationalReconstruction, BruteForceOracleSmallModuli) {
  // For every residue, the result must be a valid bounded fraction, and a
  // bounded fraction exists iff one is returned.
  for (long m : {101L, 97L, 211L, 1009L}) {
    BigInt bound;
    BigInt half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    const long B = bound.get_si();
    for (long r = 0; r < m; ++r) {
      bool exists = false;
      for (long b = 1; b <= B && !exists; ++b) {
        if (std::gcd(b, m) != 1) continue;
        for (long a = -B; a <= B; ++a)
          if (((a - r * b) % m + m) % m == 0) {
            exists = true;
            break;
          }
      }
      auto q = rational_reconstruct(r, m);
      EXPECT_EQ(exists, q.has_value()) << "r=" << r << " m=" << m;
      if (q) {
        BigInt a = q->get_num(), b = q->get_den();
        EXPECT_LE(abs(a), bound);
        EXPECT_LE(b, bound);
        BigInt diff = a - BigInt(r) * b;
        EXPECT_EQ(BigInt(diff % m), 0);
      }
    }
  }
}

TEST(RationalReconstruction, FiftyModHundredOne) {
  auto q = rational_reconstruct(50, 101);
  if (q) {
    EXPECT_LE(abs(q->get_num()), 7);
    EXPECT_LE(q->get_den(), 7);
    EXPECT_EQ(BigInt((q->get_num() - 50 * q->get_den()) % 101), 0);
  }
}

TEST(RationalReconstruction, RoundTripTwoPrimes) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const long B = i % 2 ? 1000000 : 1000;
    long a = rng.uniform(-B, B), b = rng.uniform(1, B);
    BigRational q(a, b);
    q.canonicalize();
    CrtAccumulator acc(1);
    for (int k = 0; k < 2; ++k) {
      PrimeField f(random_prime(62, rng));
      u64 r;
      ASSERT_TRUE(rational_mod_p(q, f, r));
      acc = crt_absorb(acc, std::vector<u64>{r}, f.modulus());
    }
    auto back = rational_reconstruct(acc.residues[0], acc.modulus);
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, q);
  }
}

TEST(Rng, ForkIsDeterministic) {
  Rng a(11), b(11);
  EXPECT_EQ(a.fork(3).next(), b.fork(3).next());
  EXPECT_NE(a.fork(3).next(), a.fork(4).next());
}
