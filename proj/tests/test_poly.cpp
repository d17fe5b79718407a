#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace diffelim;
using namespace diffelim::testing;

namespace {

const VarSet S2 = VarSet::state(2);
const VarSet S3 = VarSet::state(3);

PolyQ sp(const std::string& s, const VarSet& v = S2) { return parse_poly(s, v); }

}  // namespace

TEST(MonomialOrder, GradedLexPrecedence) {
  const VarSet d2 = VarSet::derivative(2);
  // x1'' > x1'^... within the same degree; higher degree always wins
  EXPECT_TRUE(d2.less({1, 0, 0}, {0, 1, 0}));
  EXPECT_TRUE(d2.less({0, 1, 0}, {0, 0, 1}));
  EXPECT_TRUE(d2.less({0, 0, 1}, {2, 0, 0}));
  EXPECT_TRUE(d2.less({0, 2, 0}, {1, 0, 1}));
  EXPECT_TRUE(S3.less({0, 1, 0}, {1, 0, 0}));
  EXPECT_TRUE(S3.less({0, 0, 2}, {0, 1, 1}));
  EXPECT_EQ(VarSet::derivative_name("x1", 0), "x1");
  EXPECT_EQ(VarSet::derivative_name("x1", 2), "x1''");
  EXPECT_EQ(VarSet::derivative_name("x1", 3), "x1^(3)");
}

TEST(PolyArithmetic, Cancellation) {
  EXPECT_EQ(sp("x1 + 1") + sp("-x1"), sp("1"));
  EXPECT_EQ(sp("x1^2 + x2") + PolyQ(Rationals{}, S2), sp("x1^2 + x2"));
  EXPECT_TRUE((sp("x1*x2 - 3") - sp("x1*x2 - 3")).is_zero());
}

TEST(PolyArithmetic, DifferenceOfSquares) {
  EXPECT_EQ(sp("x1 + x2") * sp("x1 - x2"), sp("x1^2 - x2^2"));
  EXPECT_EQ(sp("3*x1*x2 - 1/2") * sp("1"), sp("3*x1*x2 - 1/2"));
  EXPECT_EQ(sp("x1 + 1").pow(3), sp("x1^3 + 3*x1^2 + 3*x1 + 1"));
}

TEST(PolyArithmetic, VariableSetMismatchThrows) {
  EXPECT_THROW(sp("x1") + sp("x1", S3), std::invalid_argument);
  EXPECT_THROW(sp("x1") * sp("x1", S3), std::invalid_argument);
}

TEST(PolyArithmetic, RingLawsByEvaluation) {
  Rng rng(10);
  PrimeField f(random_prime(62, rng));
  for (int i = 0; i < 50; ++i) {
    auto a = random_poly_p(rng, f, S3, 3, 6), b = random_poly_p(rng, f, S3, 3, 6), c = random_poly_p(rng, f, S3, 2, 5);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    for (int j = 0; j < 20; ++j) {
      auto pt = random_point(rng, f, 3);
      EXPECT_EQ(evaluate<PrimeField>(a + b, pt), f.add(evaluate<PrimeField>(a, pt), evaluate<PrimeField>(b, pt)));
      EXPECT_EQ(evaluate<PrimeField>(a * b, pt), f.mul(evaluate<PrimeField>(a, pt), evaluate<PrimeField>(b, pt)));
    }
  }
}

TEST(PolyArithmetic, DegreeOfProductOverQ) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    auto a = random_poly(rng, S3, static_cast<int>(rng.uniform(0, 4)), 5);
    auto b = random_poly(rng, S3, static_cast<int>(rng.uniform(0, 4)), 5);
    EXPECT_EQ((a * b).total_degree(), a.total_degree() + b.total_degree());
  }
}

TEST(PolyArithmetic, GenericOverBothRings) {
  Rng rng(12);
  PrimeField f(random_prime(31, rng));
  for (int i = 0; i < 30; ++i) {
    auto a = random_poly(rng, S2, 3, 5), b = random_poly(rng, S2, 2, 4);
    auto ap = reduce_mod(a, f), bp = reduce_mod(b, f);
    ASSERT_TRUE(ap && bp);
    EXPECT_EQ(*reduce_mod(a * b, f), *ap * *bp);
    EXPECT_EQ(*reduce_mod(a - b, f), *ap - *bp);
    EXPECT_EQ(*reduce_mod(partial_derivative(a, 1), f), partial_derivative(*ap, 1));
  }
}

TEST(PartialDerivative, Basics) {
  EXPECT_EQ(partial_derivative(sp("x1^3"), 0), sp("3*x1^2"));
  EXPECT_TRUE(partial_derivative(sp("x2"), 0).is_zero());
}

TEST(PartialDerivative, Leibniz) {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    auto f = random_poly(rng, S3, 3, 5), g = random_poly(rng, S3, 3, 5);
    for (std::size_t v = 0; v < 3; ++v)
      EXPECT_EQ(partial_derivative(f * g, v), f * partial_derivative(g, v) + g * partial_derivative(f, v));
  }
}

TEST(Evaluate, HandArithmetic) {
  std::vector<BigRational> pt{2, 3};
  EXPECT_EQ(evaluate<Rationals>(sp("x1^2 + x2"), pt), 7);
  EXPECT_EQ(evaluate<Rationals>(sp("5/3"), pt), BigRational(5, 3));
  std::vector<BigRational> bad{1};
  EXPECT_THROW(evaluate<Rationals>(sp("x1"), bad), std::invalid_argument);
}

TEST(Evaluate, PowerTableMatchesNaive) {
  Rng rng(14);
  PrimeField f(random_prime(62, rng));
  for (int i = 0; i < 100; ++i) {
    auto a = random_poly_p(rng, f, S3, 5, 8);
    auto pt = random_point(rng, f, 3);
    u64 naive = 0;
    for (const auto& [e, c] : a.terms()) {
      u64 m = c;
      for (std::size_t k = 0; k < 3; ++k)
        for (Exponent j = 0; j < e[k]; ++j) m = f.mul(m, pt[k]);
      naive = f.add(naive, m);
    }
    EXPECT_EQ(evaluate<PrimeField>(a, pt), naive);
  }
}

TEST(NormalizeCanonical, ScalingAndSign) {
  const VarSet d2 = VarSet::derivative(2);
  EXPECT_EQ(normalize_canonical(parse_poly("1/2*x1'' + 1/2*x1", d2)), parse_poly("x1'' + x1", d2));
  EXPECT_EQ(normalize_canonical(sp("-3*x1")), sp("x1"));
  EXPECT_EQ(normalize_canonical(sp("2/3*x1^2 - 4/9*x2")), sp("3*x1^2 - 2*x2"));
  EXPECT_THROW(normalize_canonical(PolyQ(Rationals{}, S2)), std::domain_error);
}

TEST(NormalizeCanonical, Idempotent) {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    BigRational scale(static_cast<long>(nonzero(rng, -50, 50)), static_cast<unsigned long>(rng.uniform(1, 50)));
    scale.canonicalize();
    auto f = random_poly(rng, S3, 3, 6).scaled(scale);
    auto n1 = normalize_canonical(f);
    EXPECT_EQ(normalize_canonical(n1), n1);
    EXPECT_GT(n1.leading_term().second, 0);
    for (const auto& [e, c] : n1.terms()) EXPECT_EQ(c.get_den(), 1);
  }
}

TEST(ExactDivide, Basics) {
  auto q = exact_divide(sp("x1^2 - x2^2"), sp("x1 - x2"));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, sp("x1 + x2"));
  EXPECT_FALSE(exact_divide(sp("x1"), sp("x2")));
  EXPECT_THROW(exact_divide(sp("x1"), PolyQ(Rationals{}, S2)), std::domain_error);
}

TEST(ExactDivide, ConstructThenDivide) {
  Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    auto q = random_poly(rng, S3, 3, 5), g = random_poly(rng, S3, 2, 4);
    auto back = exact_divide(q * g, g);
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, q);
    EXPECT_FALSE(exact_divide(q * g + sp("1", S3), g) && g.total_degree() > 0);
  }
}

TEST(Rendering, RoundTripsThroughParser) {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    auto f = random_poly(rng, S3, 4, 6, -20, 20).scaled(BigRational(1, static_cast<unsigned long>(rng.uniform(1, 7))));
    EXPECT_EQ(parse_poly(render(f), S3), f) << render(f);
  }
  const VarSet d3 = VarSet::derivative(3);
  auto g = parse_poly("x1^(3)^2 - 2*x1''*x1' + x1^3 - 1/2", d3);
  EXPECT_EQ(render(g), "x1^3 + x1^(3)^2 - 2*x1''*x1' - 1/2");
  EXPECT_EQ(parse_poly(render(g), d3), g);
  EXPECT_EQ(render(sp("x1^2*x2 + 3*x1 - 1/2")), "x1^2*x2 + 3*x1 - 1/2");
}

TEST(Parser, Errors) {
  EXPECT_THROW(sp("x3"), ParseError);
  EXPECT_THROW(sp("x2'"), ParseError);
  EXPECT_THROW(sp("x1/x2"), ParseError);
  EXPECT_THROW(sp("x1^x2"), ParseError);
  EXPECT_THROW(sp("x1^(-1)"), ParseError);
  EXPECT_THROW(sp("(x1 + 1"), ParseError);
  EXPECT_THROW(sp("x1 +"), ParseError);
  EXPECT_THROW(sp("1/0"), ParseError);
  try {
    sp("x1 + y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 6);
  }
}

TEST(Parser, ArithmeticInsideExpressions) {
  EXPECT_EQ(sp("(x1 + x2)^2 / 2"), sp("1/2*x1^2 + x1*x2 + 1/2*x2^2"));
  EXPECT_EQ(sp("-(x1 - 0.5)"), sp("1/2 - x1"));
  EXPECT_EQ(sp("2*3*x1 - x1*6"), PolyQ(Rationals{}, S2));
}
