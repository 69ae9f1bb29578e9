#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "maxavg/reduced.hpp"

namespace maxavg {

// Additive constant in inf S_n^max = e ln n - A + O(1 / ln n).
inline constexpr double kConstantA = 1.70465603718;

// inf over x of max_avg_sum(x), computed as the chain minimum at N = n, p = 1/n.
double inf_s(Index n, const OptimizerConfig& cfg = {});

struct SweepRecord {
  Index n = 1;
  double s_star = 1.0;
  double deficit = -1.0;  // e ln n - s_star
  Index support = 1;
  double residual = 0.0;
  bool converged = true;
  std::vector<double> profile;  // the `support` positive entries of the minimizer
};

// One record per n (ascending). Each solve is warm-started from the previous
// minimizer. Unconverged solves keep their best iterate and are flagged.
std::vector<SweepRecord> sweep(std::span<const Index> n_values, const OptimizerConfig& cfg = {});

// `points` geometrically spaced values in [from, to], rounded to integers and
// deduplicated. Empty when the range is invalid.
std::vector<Index> geometric_grid(double from, double to, int points);

struct ConstantFit {
  double a_hat = 0;
  double slope_c = 0;        // deficit ~ a_hat - slope_c / ln n
  double residual_norm = 0;
  std::size_t used = 0;      // records with n >= 100
};

// Least-squares fit of deficit_n = a - c / ln n over records with n >= 100.
// Needs at least 4 such records; throws IllConditionedFit when the spread of
// 1 / ln n is too small to separate intercept and slope.
ConstantFit estimate_constant_a(std::span<const SweepRecord> records);

// Intercept of the line through two (1 / ln n, deficit) points.
double two_point_extrapolation(const SweepRecord& lo, const SweepRecord& hi);

// x_i = e^{-(i-1)} for i <= ceil(ln n), zero beyond, normalized.
std::vector<double> witness_tuple(Index n);

// Header "n,s_star,deficit,support,residual"; 17 significant digits.
void write_csv(std::ostream& out, std::span<const SweepRecord> records);

}  // namespace maxavg
