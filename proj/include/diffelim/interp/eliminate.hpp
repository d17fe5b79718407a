#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "diffelim/arith/crt.hpp"
#include "diffelim/arith/rng.hpp"
#include "diffelim/interp/evaluation.hpp"
#include "diffelim/ode/order.hpp"
#include "diffelim/ode/system.hpp"
#include "diffelim/support/bound.hpp"
#include "diffelim/verify/membership.hpp"

namespace diffelim {

struct SampleConfig {
  std::int64_t radius = 1893;
  std::uint64_t seed = 0;
  int prime_bits = 62;
  int max_primes = 200;
  std::optional<int> nu_override;
  // rows added on top of |support| for solves on the shrunk support
  int extra_rows = 8;
  int probe_points = 32;
  // shrunk-support solves run in batches of this many primes
  int threads = 1;
  std::function<void(const std::string&)> log;
};

struct EliminationResult {
  PolyQ f_min{Rationals{}, VarSet::derivative(0)};
  int nu = 0;
  std::vector<u64> primes_used;
  std::size_t support_size = 0;
  std::size_t bound_size = 0;
  VerificationReport verification;
};

class EliminationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-prime outcome of a kernel solve.
struct ModularSolution {
  enum class Status { found, empty, anomaly, bad_prime };
  Status status = Status::empty;
  std::vector<std::size_t> support;  // column indices with nonzero coefficient
  std::vector<u64> coeffs;           // full coefficient vector over the columns
  std::size_t leading = 0;
};

/// One modular solve: reduce g mod p, sample `rows` points, assemble the
/// evaluation matrix on `monomials` and extract the minimal kernel element.
inline ModularSolution eliminate_mod_p(const OdeSystem& sys, const PrimeField& field,
                                       std::span<const ExponentVector> monomials, int nu, std::size_t rows,
                                       std::int64_t radius, Rng& rng) {
  ModularSolution out;
  auto g = sys.reduce(field);
  if (!g || field.modulus() <= static_cast<u64>(nu)) {
    out.status = ModularSolution::Status::bad_prime;
    return out;
  }
  auto points = sample_points(rng, radius, rows, sys.n());
  auto matrix = assemble(*g, monomials, points, nu);
  auto min = minimal_element(std::move(matrix), monomials);
  switch (min.status) {
    case MinimalElement::Status::empty: out.status = ModularSolution::Status::empty; return out;
    case MinimalElement::Status::anomaly: out.status = ModularSolution::Status::anomaly; return out;
    case MinimalElement::Status::found: break;
  }
  out.status = ModularSolution::Status::found;
  out.coeffs = std::move(min.coeffs);
  out.leading = min.leading;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    if (out.coeffs[i] != 0) out.support.push_back(i);
  return out;
}

namespace detail {

inline constexpr std::uint64_t kOrderStream = 0x6f72646572ULL;
inline constexpr std::uint64_t kPrimeStream = 0x7072696d65ULL;
inline constexpr std::uint64_t kPointStream = 0x706f696e74ULL;
inline constexpr std::uint64_t kProbeStream = 0x70726f6265ULL;

class EliminationRun {
 public:
  EliminationRun(const OdeSystem& sys, const SampleConfig& cfg) : sys_(sys), cfg_(cfg), root_(cfg.seed) {}

  EliminationResult run() {
    if (sys_.d() < 1) throw EliminationError("eliminate: deg g1 must be at least 1");
    if (cfg_.radius < 1) throw EliminationError("eliminate: radius must be >= 1");
    if (cfg_.prime_bits < 16 || cfg_.prime_bits > 62) throw EliminationError("eliminate: prime bits must lie in [16, 62]");
    const int n = sys_.n();
    int nu;
    if (cfg_.nu_override) {
      nu = *cfg_.nu_override;
      if (nu < 1) throw EliminationError("eliminate: order override must be >= 1");
      log("order fixed by caller: nu = " + std::to_string(nu));
    } else {
      nu = std::max(1, order_nu(sys_, root_.fork(kOrderStream), 3));
      log("estimated order nu = " + std::to_string(nu));
    }
    if (n == 1) nu = 1;
    int empty_below = 0;  // largest order known to give an empty kernel
    for (;;) {
      std::optional<EliminationResult> result;
      try {
        result = attempt(nu);
      } catch (const OrderTooHigh&) {
        // f_min and its derivative share a total degree, so above the true
        // order the first kernel stratum is at least two-dimensional
        if (nu - 1 <= empty_below) throw EliminationError("kernel stratum is not one-dimensional at any order");
        --nu;
        log("kernel stratum not one-dimensional: lowering order to nu = " + std::to_string(nu));
        continue;
      }
      if (result) return std::move(*result);
      empty_below = nu;
      if (nu >= std::max(n, cfg_.nu_override.value_or(0))) {
        throw EliminationError("empty kernel at nu = " + std::to_string(nu) +
                               " (the support bound guarantees a solution at nu = n; check the input)");
      }
      ++nu;
      log("empty kernel: escalating order to nu = " + std::to_string(nu));
    }
  }

 private:
  void log(const std::string& msg) const {
    if (cfg_.log) cfg_.log(msg);
  }

  // The k-th task always uses prime_at(k) and point stream k, so results do
  // not depend on how many tasks run concurrently.
  u64 prime_at(std::size_t k) {
    while (sequence_.size() <= k) {
      Rng r = root_.fork(kPrimeStream + generated_++);
      u64 p = random_prime(cfg_.prime_bits, r);
      if (std::find(sequence_.begin(), sequence_.end(), p) == sequence_.end()) sequence_.push_back(p);
    }
    return sequence_[k];
  }

  std::size_t claim_task() {
    if (cursor_ >= static_cast<std::size_t>(cfg_.max_primes))
      throw EliminationError("max primes (" + std::to_string(cfg_.max_primes) + ") exhausted without stabilization");
    return cursor_++;
  }

  ModularSolution solve_task(std::size_t k, std::span<const ExponentVector> monomials, int nu, std::size_t rows) {
    PrimeField field(prime_at(k));
    Rng rng = root_.fork(kPointStream + k);
    return eliminate_mod_p(sys_, field, monomials, nu, rows, cfg_.radius, rng);
  }

  struct OrderTooHigh {};

  // Full-support solve with retries on anomalies or bad primes. Anomalies on
  // three independent samples mean the order exceeds the true one.
  std::optional<std::pair<u64, ModularSolution>> full_solve(std::span<const ExponentVector> all, int nu) {
    int anomalies = 0;
    for (int attempt = 0; attempt < 6; ++attempt) {
      const std::size_t k = claim_task();
      auto sol = solve_task(k, all, nu, all.size());
      const std::string tag = "prime " + std::to_string(prime_at(k));
      switch (sol.status) {
        case ModularSolution::Status::found: return std::make_pair(prime_at(k), std::move(sol));
        case ModularSolution::Status::empty: return std::nullopt;
        case ModularSolution::Status::anomaly:
          log(tag + ": kernel stratum of dimension > 1, resampling");
          if (++anomalies == 3) throw OrderTooHigh{};
          break;
        case ModularSolution::Status::bad_prime: log(tag + " divides a coefficient denominator, skipped"); break;
      }
    }
    throw EliminationError("repeated degenerate samples on the full support; try a larger radius");
  }

  // Solves tasks [first, first + count) on the shrunk support, concurrently
  // when more than one thread is allowed.
  std::vector<ModularSolution> solve_batch(std::size_t first, std::size_t count,
                                           std::span<const ExponentVector> support, int nu) {
    const std::size_t rows = support.size() + static_cast<std::size_t>(cfg_.extra_rows);
    for (std::size_t i = 0; i < count; ++i) prime_at(first + i);
    std::vector<ModularSolution> out(count);
    if (count == 1) {
      out[0] = solve_task(first, support, nu, rows);
      return out;
    }
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < count; ++i) {
      workers.emplace_back([&, i] {
        try {
          out[i] = solve_task(first + i, support, nu, rows);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    return out;
  }

  std::optional<EliminationResult> attempt(int nu) {
    const int n = sys_.n();
    const int D = std::max(1, sys_.D());
    const SupportBound bound = bound_for_system(n, sys_.d(), D, nu);
    const std::vector<ExponentVector> all = enumerate(bound);
    log("nu = " + std::to_string(nu) + ": support bound has " + std::to_string(all.size()) + " monomials");

    auto first = full_solve(all, nu);
    if (!first) return std::nullopt;

    std::vector<ExponentVector> support;
    std::vector<u64> residues;
    for (auto i : first->second.support) {
      support.push_back(all[i]);
      residues.push_back(first->second.coeffs[i]);
    }
    std::vector<u64> used{first->first};
    log("prime " + std::to_string(first->first) + ": support shrunk to " + std::to_string(support.size()) +
        " monomials");

    CrtAccumulator acc(support.size());
    acc = crt_absorb(acc, residues, first->first);
    std::optional<std::vector<BigRational>> previous = reconstruct(acc);
    int bad_primes = 0;
    const std::size_t batch = static_cast<std::size_t>(std::max(1, cfg_.threads));

    for (;;) {
      const std::size_t start = claim_task();
      std::size_t count = 1;
      while (count < batch && cursor_ < static_cast<std::size_t>(cfg_.max_primes)) {
        ++cursor_;
        ++count;
      }
      auto solutions = solve_batch(start, count, support, nu);
      bool restart = false;
      for (std::size_t i = 0; i < count && !restart; ++i) {
        const std::size_t k = start + i;
        const u64 p = prime_at(k);
        auto& sol = solutions[i];
        const bool good = sol.status == ModularSolution::Status::found && sol.leading + 1 == support.size();
        if (!good) {
          if (sol.status == ModularSolution::Status::bad_prime) {
            log("prime " + std::to_string(p) + " divides a coefficient denominator, skipped");
            continue;
          }
          ++bad_primes;
          log("prime " + std::to_string(p) + ": shrunk-support solve disagrees, prime abandoned");
          if (bad_primes >= 2) {
            log("restarting support discovery with two agreeing primes");
            cursor_ = k + 1;
            auto restarted = rediscover(all, nu, support, acc);
            if (!restarted) return std::nullopt;
            used = *restarted;
            previous = reconstruct(acc);
            bad_primes = 0;
            restart = true;
          }
          continue;
        }
        acc = crt_absorb(acc, sol.coeffs, p);
        used.push_back(p);
        auto current = reconstruct(acc);
        log("prime " + std::to_string(p) + " absorbed (" + std::to_string(used.size()) + " primes, " +
            (current ? "reconstruction ok" : "reconstruction pending") + ")");
        if (current && previous && *current == *previous) {
          PolyQ candidate = to_poly(support, *current, nu);
          auto report = probe(candidate);
          if (report.outcome) {
            EliminationResult result;
            result.f_min = trim_order(normalize_canonical(candidate));
            result.nu = result.f_min.vars().order();
            result.primes_used = used;
            result.support_size = support.size();
            result.bound_size = all.size();
            result.verification = report;
            log("stabilized after " + std::to_string(used.size()) + " primes; membership probe passed");
            return result;
          }
          log("membership probe failed; continuing with more primes");
        }
        previous = std::move(current);
      }
    }
  }

  // Re-derives the support from two full solves that agree; resets acc.
  std::optional<std::vector<u64>> rediscover(std::span<const ExponentVector> all, int nu,
                                             std::vector<ExponentVector>& support, CrtAccumulator& acc) {
    std::optional<std::pair<u64, ModularSolution>> last;
    for (int round = 0; round < 8; ++round) {
      auto sol = full_solve(all, nu);
      if (!sol) return std::nullopt;
      if (last && last->second.support == sol->second.support && last->second.leading == sol->second.leading) {
        support.clear();
        std::vector<u64> r1, r2;
        for (auto i : sol->second.support) {
          support.push_back(all[i]);
          r1.push_back(last->second.coeffs[i]);
          r2.push_back(sol->second.coeffs[i]);
        }
        acc = CrtAccumulator(support.size());
        acc = crt_absorb(acc, r1, last->first);
        acc = crt_absorb(acc, r2, sol->first);
        return std::vector<u64>{last->first, sol->first};
      }
      last = std::move(sol);
    }
    throw EliminationError("could not find two primes agreeing on the support");
  }

  static std::optional<std::vector<BigRational>> reconstruct(const CrtAccumulator& acc) {
    std::vector<BigRational> out;
    out.reserve(acc.residues.size());
    for (const auto& r : acc.residues) {
      auto q = rational_reconstruct(r, acc.modulus);
      if (!q) return std::nullopt;
      out.push_back(std::move(*q));
    }
    return out;
  }

  // Drops trailing derivative variables that do not occur, so a caller
  // supplied order above the true one still yields f_min in its own order.
  static PolyQ trim_order(const PolyQ& f) {
    const int nu = f.vars().order();
    int used = 0;
    for (const auto& [e, c] : f.terms())
      for (int k = nu; k > used; --k)
        if (e[static_cast<std::size_t>(k)] != 0) used = k;
    if (used == nu) return f;
    std::vector<std::size_t> identity(static_cast<std::size_t>(nu) + 1);
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
    return embed(f, VarSet::derivative(used), identity);
  }

  static PolyQ to_poly(std::span<const ExponentVector> support, const std::vector<BigRational>& coeffs, int nu) {
    std::vector<PolyQ::Term> terms;
    for (std::size_t i = 0; i < support.size(); ++i) terms.emplace_back(support[i], coeffs[i]);
    return PolyQ::from_terms(Rationals{}, VarSet::derivative(nu), std::move(terms));
  }

  // Jet-membership probe on a fresh prime at cfg_.probe_points random points.
  VerificationReport probe(const PolyQ& candidate) {
    VerificationReport report;
    report.mode = VerificationMode::probabilistic;
    report.trials = cfg_.probe_points;
    Rng rng = root_.fork(kProbeStream + probe_counter_++);
    for (;;) {
      PrimeField field(random_prime(cfg_.prime_bits, rng));
      auto g = sys_.reduce(field);
      auto f = reduce_mod(candidate, field);
      if (!g || !f) continue;
      report.outcome = true;
      for (int t = 0; t < cfg_.probe_points && report.outcome; ++t) {
        std::vector<u64> base(static_cast<std::size_t>(sys_.n()));
        for (auto& v : base) v = rng.uniform_u64(0, field.modulus() - 1);
        report.outcome = evaluate_at_jet(*g, *f, base) == 0;
      }
      BigInt numer = BigInt(cfg_.probe_points) * BigInt(static_cast<unsigned long>(candidate.total_degree())) *
                     BigInt(static_cast<unsigned long>(lie_iterate_degree_bound(sys_, candidate.vars().order())));
      report.failure_bound = BigRational(numer, big_from_u64(field.modulus()));
      report.failure_bound.canonicalize();
      return report;
    }
  }

  const OdeSystem& sys_;
  const SampleConfig& cfg_;
  Rng root_;
  std::vector<u64> sequence_;
  std::uint64_t generated_ = 0;
  std::size_t cursor_ = 0;
  std::uint64_t probe_counter_ = 0;
};

}  // namespace detail

/// Minimal differential polynomial of x1 by evaluation-interpolation over
/// several primes, with support shrinking after the first prime, CRT and
/// rational reconstruction. The order is escalated while the kernel is empty.
inline EliminationResult eliminate(const OdeSystem& sys, const SampleConfig& cfg = {}) {
  return detail::EliminationRun(sys, cfg).run();
}

}  // namespace diffelim
