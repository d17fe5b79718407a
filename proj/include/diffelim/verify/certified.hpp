#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "diffelim/interp/eliminate.hpp"
#include "diffelim/verify/membership.hpp"

namespace diffelim {

struct CertifyConfig {
  SampleConfig sample;
  TermBudget budget{};
  int max_rounds = 6;
};

/// Raised when no candidate passed the exact check within the round cap.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(const std::string& msg, std::optional<EliminationResult> last)
      : std::runtime_error(msg), last_(std::move(last)) {}
  const std::optional<EliminationResult>& last_candidate() const { return last_; }

 private:
  std::optional<EliminationResult> last_;
};

/// Runs eliminate starting at radius 1893 and accepts the result only after
/// R_g(f) = 0 is confirmed over Q; the radius doubles after each rejection.
/// BudgetExceeded from the exact check propagates unchanged.
inline EliminationResult certified_eliminate(const OdeSystem& sys, const CertifyConfig& cfg = {}) {
  if (cfg.max_rounds < 1) throw std::invalid_argument("certified_eliminate: max_rounds must be >= 1");
  SampleConfig sample = cfg.sample;
  sample.radius = 1893;
  std::optional<EliminationResult> last;
  for (int round = 0; round < cfg.max_rounds; ++round) {
    auto result = eliminate(sys, sample);
    if (sample.log) sample.log("exact membership check (radius " + std::to_string(sample.radius) + ")");
    auto report = check_exact(sys, result.f_min, cfg.budget);
    if (report.outcome) {
      result.verification = report;
      return result;
    }
    if (sample.log) sample.log("exact check rejected the candidate; doubling the radius");
    last = std::move(result);
    sample.radius *= 2;
    sample.seed = mix_seed(sample.seed + static_cast<std::uint64_t>(round) + 1);
  }
  throw CertificationError("certification failed after " + std::to_string(cfg.max_rounds) + " rounds", std::move(last));
}

}  // namespace diffelim
