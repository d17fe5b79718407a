#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "diffelim/cli/model.hpp"
#include "diffelim/interp/eliminate.hpp"
#include "diffelim/support/bound.hpp"
#include "diffelim/verify/membership.hpp"

namespace diffelim {

struct BenchRow {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
  double seconds = 0;
};

struct BenchCount {
  int n, d, D;
  std::uint64_t expected;
};

/// Lattice counts of the support bound at nu = n.
inline const std::vector<BenchCount>& table_counts() {
  static const std::vector<BenchCount> rows = {
      {3, 2, 1, 271},   {3, 2, 2, 1292},  {3, 2, 3, 7875},  {3, 2, 4, 31757}, {3, 2, 5, 98771}, {3, 3, 1, 9520},
      {3, 3, 2, 25788}, {3, 3, 3, 65637}, {4, 1, 2, 8189},  {4, 2, 1, 11021}, {2, 2, 1, 19},
  };
  return rows;
}

struct BenchExample {
  std::string name;
  std::string model;
  std::string expected;  // canonical f_min in derivative notation
  int nu;
};

inline const std::vector<BenchExample>& worked_examples() {
  static const std::vector<BenchExample> rows = {
      {"harmonic oscillator", "x1' = x2\nx2' = -x1\n", "x1'' + x1", 2},
      {"x1' = x2^2, x2' = x1", "x1' = x2^2\nx2' = x1\n", "x1''^2 - 4*x1^2*x1'", 2},
  };
  return rows;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline std::vector<BenchRow> bench_tables() {
  std::vector<BenchRow> out;
  for (const auto& row : table_counts()) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t got = count(bound_for_system(row.n, row.d, row.D, row.n));
    out.push_back({"count n=" + std::to_string(row.n) + " d=" + std::to_string(row.d) + " D=" + std::to_string(row.D),
                   std::to_string(row.expected), std::to_string(got), got == row.expected, detail::seconds_since(t0)});
  }
  return out;
}

/// Eliminates each worked example, compares with the canonical expected
/// polynomial and confirms membership exactly.
inline std::vector<BenchRow> bench_examples(std::uint64_t seed) {
  std::vector<BenchRow> out;
  for (const auto& ex : worked_examples()) {
    auto t0 = std::chrono::steady_clock::now();
    BenchRow row{ex.name, ex.expected, "", false, 0};
    try {
      const OdeSystem sys = parse_model(ex.model);
      const PolyQ expected = normalize_canonical(parse_poly(ex.expected, VarSet::derivative(ex.nu)));
      row.expected = render(expected);
      SampleConfig cfg;
      cfg.seed = seed;
      auto result = eliminate(sys, cfg);
      row.got = render(result.f_min);
      const bool exact = check_exact(sys, result.f_min, TermBudget{1u << 20}).outcome;
      row.pass = result.f_min == expected && exact;
      if (!exact) row.got += " (exact check failed)";
    } catch (const std::exception& e) {
      row.got = std::string("error: ") + e.what();
    }
    row.seconds = detail::seconds_since(t0);
    out.push_back(std::move(row));
  }
  return out;
}

/// Prints one line per row plus a summary; returns true when all rows pass.
inline bool print_bench(std::ostream& os, const std::vector<BenchRow>& rows) {
  std::size_t passed = 0;
  for (const auto& r : rows) {
    passed += r.pass ? 1 : 0;
    os << (r.pass ? "PASS  " : "FAIL  ") << r.name << ": expected " << r.expected << ", got " << r.got << " ("
       << r.seconds << " s)\n";
  }
  os << passed << "/" << rows.size() << " rows match\n";
  return passed == rows.size();
}

}  // namespace diffelim
