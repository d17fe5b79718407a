// Command-line front end: eliminate, bound, count, bench.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diffelim/cli/bench.hpp"
#include "diffelim/cli/model.hpp"
#include "diffelim/cli/result_json.hpp"
#include "diffelim/verify/certified.hpp"

namespace {

using namespace diffelim;

enum Exit : int { ok = 0, usage = 2, parse = 3, computation = 4, verification = 5 };

int default_threads() {
  if (const char* env = std::getenv("DIFFELIM_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid DIFFELIM_THREADS=" << env << "\n";
  }
  return 1;
}

struct EliminateOptions {
  std::string file;
  std::uint64_t seed = 0;
  bool certify = false;
  int prime_bits = 62;
  int max_primes = 200;
  int order = 0;
  bool json = false;
  int target = 1;
  int threads = 1;
  std::int64_t radius = 1893;
  std::size_t budget = 2000000;
  bool quiet = false;
};

int run_eliminate(const EliminateOptions& opt) {
  std::ifstream in(opt.file);
  if (!in) {
    std::cerr << "error: cannot read " << opt.file << "\n";
    return usage;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  OdeSystem sys = [&] {
    try {
      return parse_model(buf.str());
    } catch (const ParseError& e) {
      std::cerr << opt.file << ": parse error at " << e.what() << "\n";
      throw Exit::parse;
    }
  }();
  if (opt.target < 1 || opt.target > sys.n()) {
    std::cerr << "error: --target must lie in 1.." << sys.n() << "\n";
    return usage;
  }
  sys = sys.relabeled(opt.target);

  SampleConfig cfg;
  cfg.seed = opt.seed;
  cfg.prime_bits = opt.prime_bits;
  cfg.max_primes = opt.max_primes;
  cfg.radius = opt.radius;
  cfg.threads = opt.threads;
  if (opt.order > 0) cfg.nu_override = opt.order;
  if (!opt.quiet) cfg.log = [](const std::string& msg) { std::cerr << "[diffelim] " << msg << "\n"; };

  const auto t0 = std::chrono::steady_clock::now();
  EliminationResult result;
  try {
    if (opt.certify) {
      CertifyConfig cc;
      cc.sample = cfg;
      cc.budget.max_terms = opt.budget;
      result = certified_eliminate(sys, cc);
    } else {
      result = eliminate(sys, cfg);
    }
  } catch (const CertificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    if (e.last_candidate()) std::cerr << "last candidate: " << render(e.last_candidate()->f_min) << "\n";
    return verification;
  } catch (const BudgetExceeded& e) {
    std::cerr << "exact check indeterminate: " << e.what() << " (raise --budget)\n";
    return computation;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return computation;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (opt.target != 1) {
    // report in the caller's variable name
    std::vector<std::size_t> identity(static_cast<std::size_t>(result.nu) + 1);
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
    result.f_min = embed(result.f_min, VarSet::derivative(result.nu, "x" + std::to_string(opt.target)), identity);
  }

  if (opt.json) {
    std::cout << to_json(result, ResultMeta{opt.seed, opt.target, seconds}).dump(2) << "\n";
  } else {
    std::cout << "f_min (x" << opt.target << ", order " << result.nu << ", " << result.f_min.size()
              << " terms):\n  " << render(result.f_min) << "\n"
              << "support bound: " << result.bound_size << " monomials, primes used: " << result.primes_used.size()
              << "\nverification: " << to_string(result.verification.mode)
              << " (failure bound " << to_string(result.verification.failure_bound) << ")\n";
  }
  return result.verification.outcome ? ok : verification;
}

SupportBound bound_from(int n, int d, int D, int nu) {
  if (n < 1) throw CLI::ValidationError("n", "must be >= 1");
  return bound_for_system(n, d, D, nu > 0 ? nu : (n == 1 ? 1 : n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal differential polynomial of x1 for x' = g(x)"};
  app.require_subcommand(1);

  EliminateOptions el;
  el.threads = default_threads();
  auto* cmd_el = app.add_subcommand("eliminate", "compute f_min for a model file");
  cmd_el->add_option("file", el.file, "model file (x<i>' = <expr> per line)")->required();
  cmd_el->add_option("--seed", el.seed, "random seed");
  cmd_el->add_flag("--certify", el.certify, "confirm membership exactly, doubling the radius on failure");
  cmd_el->add_option("--prime-bits", el.prime_bits, "prime size in bits")->check(CLI::Range(16, 62));
  cmd_el->add_option("--max-primes", el.max_primes, "prime budget")->check(CLI::PositiveNumber);
  cmd_el->add_option("--order", el.order, "starting order instead of the estimate")->check(CLI::PositiveNumber);
  cmd_el->add_flag("--json", el.json, "print the JSON result document");
  cmd_el->add_option("--target", el.target, "variable to eliminate for (relabelled to x1)")->check(CLI::PositiveNumber);
  cmd_el->add_option("--threads", el.threads, "concurrent per-prime solves (default: DIFFELIM_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  cmd_el->add_option("--radius", el.radius, "sampling radius")->check(CLI::PositiveNumber);
  cmd_el->add_option("--budget", el.budget, "term ceiling for the exact check");
  cmd_el->add_flag("-q,--quiet", el.quiet, "suppress progress on stderr");

  int n = 0, d = 0, D = 0, nu = 0;
  std::vector<std::int64_t> omega;
  bool bound_json = false;
  auto* cmd_bound = app.add_subcommand("bound", "print the support-bound inequalities");
  cmd_bound->add_option("n", n, "dimension")->required()->check(CLI::PositiveNumber);
  cmd_bound->add_option("d", d, "deg g1")->required()->check(CLI::PositiveNumber);
  cmd_bound->add_option("D", D, "max deg g_i, i >= 2 (ignored for n = 1)")->required()->check(CLI::PositiveNumber);
  cmd_bound->add_option("--nu", nu, "order (default n)")->check(CLI::PositiveNumber);
  cmd_bound->add_option("--omega", omega, "weights w1,...,w_nu for the single weighted inequality")->delimiter(',');
  cmd_bound->add_flag("--json", bound_json, "machine-readable [[coefficients], rhs] list");

  auto* cmd_count = app.add_subcommand("count", "count lattice points of the support bound");
  cmd_count->add_option("n", n, "dimension")->required()->check(CLI::PositiveNumber);
  cmd_count->add_option("d", d, "deg g1")->required()->check(CLI::PositiveNumber);
  cmd_count->add_option("D", D, "max deg g_i, i >= 2 (ignored for n = 1)")->required()->check(CLI::PositiveNumber);
  cmd_count->add_option("--nu", nu, "order (default n)")->check(CLI::PositiveNumber);

  std::string suite;
  std::uint64_t bench_seed = 0;
  auto* cmd_bench = app.add_subcommand("bench", "reproduce the reference tables or worked examples");
  cmd_bench->add_option("suite", suite, "tables | examples")->required()->check(CLI::IsMember({"tables", "examples"}));
  cmd_bench->add_option("--seed", bench_seed, "random seed for the examples suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (cmd_el->parsed()) return run_eliminate(el);

    if (cmd_bound->parsed()) {
      SupportBound b;
      if (!omega.empty()) {
        const int order = nu > 0 ? nu : n;
        if (static_cast<int>(omega.size()) != order) {
          std::cerr << "error: --omega needs exactly " << order << " weights\n";
          return usage;
        }
        b.nu = order;
        b.inequalities.push_back(general_bound_inequality(d, D, order, omega));
      } else {
        b = bound_from(n, d, D, nu);
      }
      if (bound_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& q : b.inequalities) out.push_back({q.coeffs, q.rhs});
        std::cout << out.dump() << "\n";
      } else {
        for (const auto& q : b.inequalities) std::cout << render(q) << "\n";
      }
      return ok;
    }

    if (cmd_count->parsed()) {
      std::cout << count(bound_from(n, d, D, nu)) << "\n";
      return ok;
    }

    if (cmd_bench->parsed()) {
      auto rows = suite == "tables" ? bench_tables() : bench_examples(bench_seed);
      return print_bench(std::cout, rows) ? ok : computation;
    }
  } catch (Exit code) {
    return code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return computation;
  }
  return usage;
}
