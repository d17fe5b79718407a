#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffelim/interp/eliminate.hpp"
#include "diffelim/poly/io.hpp"

namespace diffelim {

inline constexpr int kResultFormat = 1;

struct ResultMeta {
  std::uint64_t seed = 0;
  int target = 1;
  double seconds = 0;
};

/// Term list [[e0, ..., e_nu], "num", "den"] in descending graded-lex order.
inline nlohmann::json terms_to_json(const PolyQ& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back(nlohmann::json::array({e, c.get_num().get_str(), c.get_den().get_str()}));
  return terms;
}

/// Rebuilds f_min in x1^(0..nu) from a term list.
inline PolyQ terms_from_json(const nlohmann::json& terms, int nu, const std::string& base = "x1") {
  if (!terms.is_array()) throw std::invalid_argument("terms: expected an array");
  std::vector<PolyQ::Term> out;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("terms: each entry is [exponents, num, den]");
    auto e = t[0].get<ExponentVector>();
    if (e.size() != static_cast<std::size_t>(nu) + 1) throw std::invalid_argument("terms: exponent length mismatch");
    BigRational q(BigInt(t[1].get<std::string>()), BigInt(t[2].get<std::string>()));
    q.canonicalize();
    out.emplace_back(std::move(e), std::move(q));
  }
  return PolyQ::from_terms(Rationals{}, VarSet::derivative(nu, base), std::move(out));
}

inline nlohmann::json to_json(const VerificationReport& r) {
  return {{"mode", to_string(r.mode)},
          {"trials", r.trials},
          {"failure_bound", to_string(r.failure_bound)},
          {"outcome", r.outcome}};
}

inline nlohmann::json to_json(const EliminationResult& r, const ResultMeta& meta) {
  const VarSet& vars = r.f_min.vars();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) names.push_back(vars.name(i));
  return {{"format", kResultFormat},
          {"target", "x" + std::to_string(meta.target)},
          {"f_min", render(r.f_min)},
          {"variables", names},
          {"terms", terms_to_json(r.f_min)},
          {"term_count", r.f_min.size()},
          {"nu", r.nu},
          {"support_size", r.support_size},
          {"bound_size", r.bound_size},
          {"primes_used", r.primes_used},
          {"seed", meta.seed},
          {"verification", to_json(r.verification)},
          {"timings", {{"total_seconds", meta.seconds}}}};
}

/// f_min recovered from a ResultDocument.
inline PolyQ f_min_from_json(const nlohmann::json& doc) {
  if (doc.value("format", 0) != kResultFormat) throw std::invalid_argument("unsupported result format");
  return terms_from_json(doc.at("terms"), doc.at("nu").get<int>(), doc.value("target", std::string("x1")));
}

}  // namespace diffelim
