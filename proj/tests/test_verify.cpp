#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace diffelim;
using namespace diffelim::testing;

namespace {

SampleConfig seeded(std::uint64_t seed) {
  SampleConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(CheckProbabilistic, HarmonicMember) {
  auto s = make_system({"x2", "-x1"});
  auto r = check_probabilistic(s, dpoly("x1'' + x1", 2), 8, 62, Rng(1));
  EXPECT_TRUE(r.outcome);
  EXPECT_EQ(r.mode, VerificationMode::probabilistic);
  EXPECT_EQ(r.trials, 8);
  EXPECT_GT(r.failure_bound, 0);
  EXPECT_LT(r.failure_bound, BigRational(1, 1000000000));
}

TEST(CheckProbabilistic, HarmonicNonMember) {
  auto s = make_system({"x2", "-x1"});
  EXPECT_FALSE(check_probabilistic(s, dpoly("x1'' - x1", 2), 1, 62, Rng(2)).outcome);
  EXPECT_FALSE(check_exact(s, dpoly("x1'' - x1", 2), {}).outcome);
}

TEST(CheckProbabilistic, ZeroPolynomial) {
  auto s = make_system({"x2", "-x1"});
  auto r = check_probabilistic(s, PolyQ(Rationals{}, VarSet::derivative(2)), 4, 62, Rng(3));
  EXPECT_TRUE(r.outcome);
  EXPECT_EQ(r.failure_bound, 0);
}

TEST(CheckProbabilistic, FailureBoundFormula) {
  auto s = make_system({"x2^2", "x1"});
  auto f = dpoly("x1''^2 - 4*x1^2*x1'", 2);
  auto r = check_probabilistic(s, f, 5, 20, Rng(4));
  // 5 trials * deg F (3) * (1 + 2 * (2 - 1)) / p with p < 2^20
  EXPECT_TRUE(r.outcome);
  EXPECT_GE(r.failure_bound, BigRational(45, 1 << 20));
  EXPECT_LE(r.failure_bound, BigRational(45, 1 << 19));
}

TEST(CheckExact, PaperExampleAndConstant) {
  auto s = make_system({"x2^2", "x1"});
  auto r = check_exact(s, dpoly("x1''^2 - 4*x1^2*x1'", 2), {});
  EXPECT_TRUE(r.outcome);
  EXPECT_EQ(r.mode, VerificationMode::exact);
  EXPECT_EQ(r.failure_bound, 0);
  EXPECT_FALSE(check_exact(s, dpoly("1", 2), {}).outcome);
}

TEST(CheckExact, BudgetExhaustionIsAnError) {
  Rng rng(5);
  auto s = dense_system(rng, 3, 2, 2, -9, 9);
  EXPECT_THROW(check_exact(s, dpoly("x1^(3)^3", 3), TermBudget{100}), BudgetExceeded);
}

TEST(CrossMode, AgreementOnRandomCandidates) {
  Rng rng(6);
  int members = 0;
  for (int i = 0; i < 20; ++i) {
    auto s = random_system(rng, 2, 2, 1, 3);
    auto fmin = eliminate(s, seeded(7)).f_min;
    const VarSet vars = fmin.vars();
    // half members (multiples of f_min), half perturbations
    PolyQ cand = i % 2 ? fmin * random_poly(rng, vars, 1, 2) : fmin + random_poly(rng, vars, 1, 2);
    auto exact = check_exact(s, cand, TermBudget{1u << 20});
    auto prob = check_probabilistic(s, cand, 4, 62, Rng(static_cast<std::uint64_t>(i)));
    EXPECT_EQ(exact.outcome, prob.outcome) << render(cand);
    if (exact.outcome) {
      ++members;
      EXPECT_TRUE(prob.outcome);
    }
  }
  EXPECT_GE(members, 5);
}

TEST(Membership, EliminateOutputOnRegressionSystems) {
  Rng rng(8);
  for (int i = 0; i < 12; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 3));
    auto s = random_system(rng, n, static_cast<int>(rng.uniform(1, 2)), static_cast<int>(rng.uniform(1, 2)), 3);
    auto res = eliminate(s, seeded(9));
    EXPECT_TRUE(check_exact(s, res.f_min, TermBudget{1u << 21}).outcome) << render_model(s);
  }
}

TEST(Certified, HarmonicOneRound) {
  std::vector<std::string> log;
  CertifyConfig cfg;
  cfg.sample.log = [&](const std::string& m) { log.push_back(m); };
  auto res = certified_eliminate(make_system({"x2", "-x1"}), cfg);
  EXPECT_EQ(res.f_min, dpoly("x1'' + x1", 2));
  EXPECT_EQ(res.verification.mode, VerificationMode::exact);
  EXPECT_TRUE(res.verification.outcome);
  int rounds = 0;
  for (const auto& m : log) rounds += m.find("exact membership check") != std::string::npos;
  EXPECT_EQ(rounds, 1);
}

TEST(Certified, Univariate) {
  auto res = certified_eliminate(make_system({"x1^2"}));
  EXPECT_EQ(res.f_min, normalize_canonical(dpoly("x1' - x1^2", 1)));
  EXPECT_EQ(res.verification.mode, VerificationMode::exact);
}

TEST(Certified, SharpnessFixtures) {
  auto a = certified_eliminate(make_system({"x1^2 + x2^2", "x2 + 1"}));
  EXPECT_NE(a.f_min.coefficient({4, 0, 0}), 0);
  EXPECT_NE(a.f_min.coefficient({0, 0, 2}), 0);
  EXPECT_NE(a.f_min.coefficient({2, 2, 0}), 0);
  auto b = certified_eliminate(make_system({"x2^2 + x1*x2", "x2"}));
  EXPECT_NE(b.f_min.coefficient({0, 3, 0}), 0);
}

// Independent oracle: dense interpolation over Q on all monomials of degree
// <= 4 in x1, x1', x1'' with exact symbolic R_g evaluated at integer points,
// no polytope pruning.
TEST(Certified, SharpnessFixtureMatchesDenseOracle) {
  auto s = make_system({"x1^2 + x2^2", "x2 + 1"});
  auto monos = monomials_up_to(3, 4);
  const VarSet vars = VarSet::derivative(2);
  std::sort(monos.begin(), monos.end(), [&](const auto& a, const auto& b) { return vars.less(a, b); });
  std::vector<PolyQ> reduced;
  for (const auto& e : monos)
    reduced.push_back(reduction<Rationals>(s.rhs(), PolyQ::from_terms(Rationals{}, vars, {{e, BigRational(1)}})));
  Rng rng(10);
  const std::size_t rows = monos.size() + 10;
  std::vector<std::vector<BigRational>> m(rows, std::vector<BigRational>(monos.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<BigRational> pt{BigRational(static_cast<long>(rng.uniform(-50, 50))),
                                BigRational(static_cast<long>(rng.uniform(-50, 50)))};
    for (std::size_t c = 0; c < monos.size(); ++c) m[r][c] = evaluate<Rationals>(reduced[c], pt);
  }
  // minimal kernel element: first free column in the graded order
  std::vector<std::size_t> pivots;
  std::size_t rank = 0, free_col = monos.size();
  for (std::size_t c = 0; c < monos.size() && free_col == monos.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) {
      free_col = c;
      break;
    }
    std::swap(m[sel], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      BigRational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < monos.size(); ++k) m[r][k] -= f * m[rank][k];
    }
    pivots.push_back(c);
    ++rank;
  }
  ASSERT_LT(free_col, monos.size());
  std::vector<PolyQ::Term> terms{{monos[free_col], BigRational(1)}};
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    BigRational v = -m[i][free_col] / m[i][pivots[i]];
    if (v != 0) terms.emplace_back(monos[pivots[i]], v);
  }
  auto oracle = normalize_canonical(PolyQ::from_terms(Rationals{}, vars, terms));
  EXPECT_EQ(certified_eliminate(s).f_min, oracle);
}

TEST(Certified, MatchesUncertifiedOutput) {
  for (const auto& eqs : std::vector<std::vector<std::string>>{
           {"x2^2", "x1"}, {"x1^2 + x1*x2 + x2^2 + 1", "x2"}, {"x1*x2 + x3", "x1 - x3^2", "x2"}}) {
    auto s = make_system(eqs);
    EXPECT_EQ(certified_eliminate(s).f_min, eliminate(s).f_min);
  }
}

TEST(Certified, RoundCapValidation) {
  CertifyConfig cfg;
  cfg.max_rounds = 0;
  EXPECT_THROW(certified_eliminate(make_system({"x2", "-x1"}), cfg), std::invalid_argument);
}
