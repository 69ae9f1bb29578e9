// Command-line front end: analyze, sum, maxsum, minimize, sweep, verify.
//
// Exit codes: 0 success, 1 input error, 2 optimizer non-convergence,
// 3 verification failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxavg/asymptotics.hpp"
#include "maxavg/cyclic_sums.hpp"
#include "maxavg/errors.hpp"
#include "maxavg/io.hpp"
#include "maxavg/reduced.hpp"
#include "maxavg/report.hpp"
#include "maxavg/verification.hpp"

namespace {

using namespace maxavg;

constexpr int kExitInput = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitVerification = 3;

struct RunConfig {
  std::string backend = "float";
  std::string format;  // per-command default when empty
  std::uint64_t seed = 20220101;
  double tol = 1e-10;

  OptimizerConfig optimizer() const {
    OptimizerConfig cfg;
    cfg.stationarity_tol = tol;
    return cfg;
  }
};

template <class T>
nlohmann::json value_json(const T& v) {
  nlohmann::json j;
  j["value"] = to_double(v);
  if constexpr (std::is_same_v<T, Rational>) j["exact"] = to_string(v);
  return j;
}

template <class T>
int run_analyze(const RunConfig& rc, const std::string& path, bool check_star) {
  auto x = parse_tuple<T>(read_file(path));
  auto a = analyze(x, check_star);
  const std::string fmt = rc.format.empty() ? "text" : rc.format;
  if (fmt == "text") {
    std::cout << render_text(a);
  } else if (fmt == "json") {
    std::cout << render_json(a) << "\n";
  } else if (fmt == "csv") {
    std::cout << render_csv(a);
  } else if (fmt == "dot") {
    if (a.poset) std::cout << poset_to_dot(*a.poset);
  } else {
    throw InputError("analyze supports --format text|json|csv|dot");
  }
  if (!a.poset) {
    std::cerr << "warning: degenerate order: " << a.poset_error << "\n";
  } else if (!a.poset->is_tree()) {
    std::cerr << "warning: tied averages; M-interval classes form a forest with no unique full maximal class\n";
  }
  return 0;
}

template <class T>
int run_sum(const std::string& path, const std::string& radii_path, std::optional<Index> k,
            const std::string& subsets_path) {
  auto x = parse_tuple<T>(read_file(path));
  nlohmann::json out;
  if (!radii_path.empty()) {
    out = value_json(sum_with_radii(x, parse_radii(read_file(radii_path))));
    out["kind"] = "radii";
  } else if (k) {
    out = value_json(diananda_sum(x, *k));
    out["kind"] = "diananda";
    out["k"] = *k;
  } else if (!subsets_path.empty()) {
    out = value_json(generalized_max_sum(x, parse_subset_system(read_file(subsets_path))));
    out["kind"] = "subsets";
  } else {
    throw InputError("sum needs one of --radii, --k, --subsets");
  }
  std::cout << out.dump() << "\n";
  return 0;
}

template <class T>
int run_maxsum(const std::string& path) {
  auto x = parse_tuple<T>(read_file(path));
  auto s = max_avg_sum(x);
  auto out = value_json(s.value);
  out["radii"] = s.radii.values();
  std::cout << out.dump() << "\n";
  return 0;
}

int oracle_steps(Index n) {
  switch (n) {
    case 1: return 1;
    case 2: return 2000;
    case 3: return 600;
    case 4: return 120;
    default: return 40;
  }
}

int run_minimize(const RunConfig& rc, std::optional<Index> n_opt, std::optional<double> p_opt,
                 std::optional<Index> size_opt, bool oracle) {
  if (n_opt.has_value() == p_opt.has_value()) throw InputError("give exactly one of --n or --p");
  Index n;
  double p;
  if (n_opt) {
    if (*n_opt < 1) throw InputError("--n must be positive");
    n = *n_opt;
    p = 1.0 / static_cast<double>(n);
  } else {
    p = *p_opt;
    if (!(p > 0) || !std::isfinite(p)) throw InputError("--p must be positive");
    const double stable = std::ceil(1.0 / p);
    n = stable > 1e7 ? 10'000'000 : static_cast<Index>(stable);
  }
  if (size_opt) {
    if (*size_opt < 1) throw InputError("--size must be positive");
    n = *size_opt;
  }
  ReducedSolution sol;
  int code = 0;
  try {
    sol = minimize_chain(n, p, rc.optimizer());
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    sol = e.best();
    code = kExitNonConvergence;
  }
  if (oracle) {
    if (n > 5) throw InputError("--oracle supports N <= 5");
    sol.oracle_gap = brute_force_oracle(n, p, oracle_steps(n), 4) - sol.value;
  }
  std::cout << to_json(sol) << "\n";
  return code;
}

int run_sweep(const RunConfig& rc, double from, double to, int points, bool estimate) {
  auto grid = geometric_grid(from, to, points);
  if (grid.empty()) throw InputError("empty sweep range");
  auto records = sweep(grid, rc.optimizer());
  if (!rc.format.empty() && rc.format != "csv") throw InputError("sweep emits --format csv only");
  write_csv(std::cout, records);
  int code = 0;
  for (const auto& r : records)
    if (!r.converged) {
      std::cerr << "warning: n=" << r.n << " did not reach the stationarity tolerance\n";
      code = kExitNonConvergence;
    }
  if (estimate) {
    auto fit = estimate_constant_a(records);
    char buf[200];
    std::snprintf(buf, sizeof buf, "# a_hat=%.17g,c=%.17g,residual=%.17g,points=%zu\n", fit.a_hat,
                  fit.slope_c, fit.residual_norm, fit.used);
    std::cout << buf;
  }
  return code;
}

int run_verify(const RunConfig& rc, const std::string& suite, double effort) {
  VerifyOptions opts;
  opts.seed = rc.seed;
  opts.effort = effort;
  std::vector<std::string> names = suite.empty() ? suite_names() : std::vector<std::string>{suite};
  bool all = true;
  for (const auto& name : names) {
    auto r = run_suite(name, opts);
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks";
    if (!r.passed()) std::cout << ", " << r.failures << " failed; first: " << r.first_failure;
    std::cout << ")\n";
    all = all && r.passed();
  }
  return all ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic sums with maximal forward averages: analysis, optimization, sweeps"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  app.add_option("--backend", rc.backend, "Arithmetic backend")
      ->check(CLI::IsMember({"float", "rational"}));
  app.add_option("--format", rc.format, "Output format (json, csv, dot; analyze also text)")
      ->check(CLI::IsMember({"text", "json", "csv", "dot"}));
  app.add_option("--seed", rc.seed, "Seed for randomized suites");
  app.add_option("--tol", rc.tol, "Optimizer stationarity tolerance")->check(CLI::PositiveNumber);

  std::string tuple_path;
  bool check_star = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Average table, M-intervals, poset, rotation");
  analyze_cmd->add_option("tuple", tuple_path, "Tuple JSON file")->required();
  analyze_cmd->add_flag("--check-star", check_star, "Test pairwise-distinct short-interval averages");

  std::string radii_path, subsets_path;
  std::optional<Index> diananda_k;
  auto* sum_cmd = app.add_subcommand("sum", "Cyclic sum with given radii, Diananda sum, or subset-system sum");
  sum_cmd->add_option("tuple", tuple_path, "Tuple JSON file")->required();
  auto* radii_opt = sum_cmd->add_option("--radii", radii_path, "Radii JSON file");
  auto* k_opt = sum_cmd->add_option("--k", diananda_k, "Diananda window length")->check(CLI::PositiveNumber);
  auto* subsets_opt = sum_cmd->add_option("--subsets", subsets_path, "Subset-system JSON file");
  radii_opt->excludes(k_opt)->excludes(subsets_opt);
  k_opt->excludes(subsets_opt);

  auto* maxsum_cmd = app.add_subcommand("maxsum", "Sum with maximal forward averages and argmax radii");
  maxsum_cmd->add_option("tuple", tuple_path, "Tuple JSON file")->required();

  std::optional<Index> n_opt, size_opt;
  std::optional<double> p_opt;
  bool oracle = false;
  auto* min_cmd = app.add_subcommand("minimize", "Minimize the chain problem; --n n means p = 1/n");
  min_cmd->add_option("--n", n_opt, "Cycle length n (N = n, p = 1/n)");
  min_cmd->add_option("--p", p_opt, "Boundary weight p (N = ceil(1/p) unless --size)");
  min_cmd->add_option("--size", size_opt, "Override the simplex dimension N");
  min_cmd->add_flag("--oracle", oracle, "Cross-check with the grid oracle (N <= 5)");

  double from = 0, to = 0;
  int points = 0;
  bool estimate = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "inf S_n over a geometric n-grid, CSV output");
  sweep_cmd->add_option("--from", from, "Smallest n")->required();
  sweep_cmd->add_option("--to", to, "Largest n")->required();
  sweep_cmd->add_option("--points", points, "Number of grid points")->required();
  sweep_cmd->add_flag("--estimate-a", estimate, "Append the fitted constant A");

  std::string suite;
  double effort = 1.0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
  verify_cmd->add_option("--suite", suite, "Run a single suite")->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--effort", effort, "Scale the number of random cases")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  const bool rational = rc.backend == "rational";
  try {
    if (*analyze_cmd)
      return rational ? run_analyze<Rational>(rc, tuple_path, check_star) : run_analyze<double>(rc, tuple_path, check_star);
    if (*sum_cmd)
      return rational ? run_sum<Rational>(tuple_path, radii_path, diananda_k, subsets_path)
                      : run_sum<double>(tuple_path, radii_path, diananda_k, subsets_path);
    if (*maxsum_cmd) return rational ? run_maxsum<Rational>(tuple_path) : run_maxsum<double>(tuple_path);
    if (*min_cmd) return run_minimize(rc, n_opt, p_opt, size_opt, oracle);
    if (*sweep_cmd) return run_sweep(rc, from, to, points, estimate);
    if (*verify_cmd) return run_verify(rc, suite, effort);
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
