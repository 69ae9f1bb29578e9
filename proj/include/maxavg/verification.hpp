#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "maxavg/periodic.hpp"

namespace maxavg {

using Rng = std::mt19937_64;

// n entries, each uniform on [0, 1) and zero with probability 1/10; at least
// one entry is positive.
std::vector<double> random_float_values(Rng& rng, Index n);

// n entries p/q with p in 1..max_num and q in 1..max_den.
std::vector<Rational> random_rational_values(Rng& rng, Index n, int max_num = 1000, int max_den = 60);

// Redraws random rational tuples of the given size until one has pairwise
// distinct short-interval averages.
PeriodicTuple<Rational> random_distinct_rational_tuple(Rng& rng, Index n);

struct SuiteResult {
  explicit SuiteResult(std::string suite = {}) : name(std::move(suite)) {}

  std::string name;
  long checks = 0;
  long failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first_failure = what;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 20220101;
  // Multiplies the number of random cases in every suite.
  double effort = 1.0;
};

// Suite names: periodic, fullmax, poset, majorization, sums, reduced,
// reduction, gradient.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace maxavg
