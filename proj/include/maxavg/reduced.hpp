#pragma once

// The non-cyclic problems on the simplex Delta_N:
//
//   T(x, p)       = sum_{i<=-1} x_i / m_i^+(x) + x_0 / p   (windows stay in 1-N..0)
//   T-tilde(x, p) = sum_{i<=-1} x_i / x_{i+1}  + x_0 / p
//
// Vectors are stored left to right, position 0 holding x_{1-N} and position
// N-1 holding x_0.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxavg/errors.hpp"
#include "maxavg/scalar.hpp"

namespace maxavg {

class SimplexVector {
 public:
  // Entries must be nonnegative and sum to 1 within 1e-12.
  explicit SimplexVector(std::vector<double> entries);
  static SimplexVector normalized(std::vector<double> weights);
  // (0, ..., 0, 1)
  static SimplexVector last_unit(Index n);

  Index size() const { return static_cast<Index>(entries_.size()); }
  double operator[](Index pos) const { return entries_[static_cast<std::size_t>(pos)]; }
  // Value of x_i for i in 1-N..0.
  double at_offset(Index i) const { return (*this)[i + size() - 1]; }
  std::span<const double> entries() const { return entries_; }
  // Length of the suffix starting at the first nonzero entry.
  Index support() const;

 private:
  std::vector<double> entries_;
};

double t_noncyclic(const SimplexVector& x, double p);

// Zero-prefix convention: 0/0 terms contribute nothing.
double t_chain(const SimplexVector& x, double p);

// Gradient of T-tilde with respect to x; every entry of x must be positive.
std::vector<double> t_chain_gradient(std::span<const double> x, double p);

// Euclidean norm of x_j * (dT/dx_j - lambda) over the support, lambda being
// the multiplier of the sum constraint. This is the gradient in the
// log-coordinates the solver works in, and is scale free.
double stationarity_residual(const SimplexVector& x, double p);

// Norm of the x-space gradient over the support, projected onto the tangent
// space of the sum constraint.
double projected_gradient_norm(const SimplexVector& x, double p);

struct OptimizerConfig {
  double stationarity_tol = 1e-10;
  double value_rtol = 1e-12;
  int max_iterations = 500;
  std::vector<double> start_ratios{0.25, 0.36787944117144233, 0.45};
  // Consecutive support sizes without improvement before the scan stops.
  int patience = 3;
};

struct ReducedSolution {
  Index n = 1;
  double p = 1.0;
  double value = 0.0;
  SimplexVector minimizer = SimplexVector::last_unit(1);
  Index support = 1;
  double residual = 0.0;
  std::optional<double> oracle_gap;
  bool converged = true;
  // |T - T-tilde| / T-tilde at the minimizer, set by minimize_noncyclic.
  std::optional<double> noncyclic_discrepancy;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, ReducedSolution best)
      : Error(what), best_(std::move(best)) {}
  const ReducedSolution& best() const { return best_; }

 private:
  ReducedSolution best_;
};

/// Minimizes T-tilde over Delta_N.
///
/// For each support size k = 1..min(N, ceil(1/p)) the objective is
/// minimized over positive k-suffixes in log-coordinates, with the last
/// entry pinned to 1 and the sum constraint applied by normalization. A
/// damped Newton method is started from geometric profiles (ratios from
/// `cfg.start_ratios`) and from any `warm_starts` (positive suffixes, padded
/// geometrically when shorter than k). The scan stops after `cfg.patience`
/// consecutive k without improvement.
///
/// Throws NonConvergence, carrying the best iterate, if no start reaches
/// `cfg.stationarity_tol`.
ReducedSolution minimize_chain(Index n, double p, const OptimizerConfig& cfg = {},
                               std::span<const std::vector<double>> warm_starts = {});

// minimize_chain re-evaluated under T. Throws ConsistencyViolation when the
// two objectives differ by more than 1e-9 relative at the minimizer.
ReducedSolution minimize_noncyclic(Index n, double p, const OptimizerConfig& cfg = {});

struct MinimizerStructure {
  bool no_interior_zeros = true;     // zeros only strictly left of the support
  bool monotone_after_leftmost = true;
  bool last_at_least_p = true;       // checked when the support has >= 2 entries

  bool ok() const { return no_interior_zeros && monotone_after_leftmost && last_at_least_p; }
};

MinimizerStructure check_minimizer_structure(const SimplexVector& x, double p, double tol = 1e-9);

// Uniform grid over Delta_N (grid_steps per unit) followed by `refinements`
// rounds of local grids around the incumbent. Returns the best T-tilde
// found, an upper bound on the minimum. Cost of the first pass grows like
// grid_steps^(N-1).
double brute_force_oracle(Index n, double p, int grid_steps, int refinements);

// Minimizes max_avg_sum over a grid of n-tuples summing to 1 whose first
// entry is a largest one, then refines locally. Returns an upper bound on
// inf S_n^max.
double cyclic_bruteforce(Index n, int grid_steps, int refinements = 0);

// {"n","p","value","support","minimizer","residual","oracle_gap"}
std::string to_json(const ReducedSolution& solution);

}  // namespace maxavg
