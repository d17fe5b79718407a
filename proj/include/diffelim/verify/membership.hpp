#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "diffelim/arith/rational.hpp"
#include "diffelim/arith/rng.hpp"
#include "diffelim/ode/jet.hpp"
#include "diffelim/ode/operators.hpp"
#include "diffelim/ode/system.hpp"
#include "diffelim/poly/sparse_poly.hpp"

namespace diffelim {

enum class VerificationMode { unverified, probabilistic, exact };

inline std::string to_string(VerificationMode m) {
  switch (m) {
    case VerificationMode::unverified: return "unverified";
    case VerificationMode::probabilistic: return "probabilistic";
    case VerificationMode::exact: return "exact";
  }
  return "unknown";
}

/// Outcome of a membership test F in I_g (equivalently R_g(F) = 0).
/// failure_bound is the probability that a non-member passes; 0 in exact mode.
struct VerificationReport {
  VerificationMode mode = VerificationMode::unverified;
  int trials = 0;
  BigRational failure_bound = 1;
  bool outcome = false;
};

/// A priori bound on max_{k <= nu} deg L_g^k(x1): each application of L_g
/// raises the degree by at most max_i deg g_i - 1.
inline std::uint64_t lie_iterate_degree_bound(const OdeSystem& sys, int nu) {
  std::uint64_t g_max = 0;
  for (const auto& g : sys.rhs()) g_max = std::max(g_max, g.total_degree());
  if (g_max <= 1) return 1;
  return 1 + static_cast<std::uint64_t>(nu) * (g_max - 1);
}

/// Value of F (in x1^(0..nu)) along the trajectory through `base`, i.e.
/// R_g(F)(base), computed from the jet.
inline u64 evaluate_at_jet(std::span<const PolyP> g, const PolyP& f, std::span<const u64> base) {
  auto values = jet_mod_p(g, base, f.vars().order());
  return evaluate<PrimeField>(f, values);
}

/// Randomized zero test of R_g(F): F is evaluated on the jets of `trials`
/// uniformly random points, each modulo a fresh random prime. The reported
/// failure bound is trials * deg F * max_k deg L_g^k(x1) / p_min.
inline VerificationReport check_probabilistic(const OdeSystem& sys, const PolyQ& f, int trials, int prime_bits,
                                              Rng rng) {
  VerificationReport report;
  report.mode = VerificationMode::probabilistic;
  report.trials = trials;
  if (f.vars().regime() != Regime::derivative) throw std::invalid_argument("check_probabilistic: F must be in x1^(k)");
  if (f.is_zero()) {
    report.failure_bound = 0;
    report.outcome = true;
    return report;
  }
  const int nu = f.vars().order();
  u64 p_min = UINT64_MAX;
  bool all_zero = true;
  for (int t = 0; t < trials; ++t) {
    std::optional<std::vector<PolyP>> g;
    std::optional<PolyP> f_p;
    PrimeField field;
    do {
      field = PrimeField(random_prime(prime_bits, rng));
      g = sys.reduce(field);
      f_p = reduce_mod(f, field);
    } while (!g || !f_p || field.modulus() <= static_cast<u64>(nu));
    p_min = std::min(p_min, field.modulus());
    std::vector<u64> base(static_cast<std::size_t>(sys.n()));
    for (auto& v : base) v = rng.uniform_u64(0, field.modulus() - 1);
    if (evaluate_at_jet(*g, *f_p, base) != 0) {
      all_zero = false;
      break;
    }
  }
  report.outcome = all_zero;
  BigInt numer = BigInt(trials) * BigInt(static_cast<unsigned long>(f.total_degree())) *
                 BigInt(static_cast<unsigned long>(lie_iterate_degree_bound(sys, nu)));
  report.failure_bound = BigRational(numer, big_from_u64(p_min));
  report.failure_bound.canonicalize();
  if (report.failure_bound > 1) report.failure_bound = 1;
  return report;
}

/// Exact membership: expands R_g(F) over Q and tests for zero. Throws
/// BudgetExceeded when an intermediate exceeds the term ceiling.
inline VerificationReport check_exact(const OdeSystem& sys, const PolyQ& f, const TermBudget& budget) {
  VerificationReport report;
  report.mode = VerificationMode::exact;
  report.trials = 0;
  report.failure_bound = 0;
  report.outcome = reduction<Rationals>(sys.rhs(), f, budget).is_zero();
  return report;
}

}  // namespace diffelim
