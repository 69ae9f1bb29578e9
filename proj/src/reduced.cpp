#include "maxavg/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <json.hpp>

#include "maxavg/cyclic_sums.hpp"
#include "maxavg/periodic.hpp"

namespace maxavg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_p(double p) {
  if (!(p > 0) || !std::isfinite(p)) throw InputError("p must be a positive finite number");
}

// T-tilde on a raw vector; +inf when some x_i > 0 is followed by a zero.
double chain_value(std::span<const double> x, double p) {
  double sum = 0;
  const std::size_t n = x.size();
  for (std::size_t a = 0; a + 1 < n; ++a) {
    if (x[a] == 0) continue;
    if (x[a + 1] == 0) return kInf;
    sum += x[a] / x[a + 1];
  }
  return sum + x[n - 1] / p;
}

// Objective over a fixed support of size k in log-coordinates u_0..u_{k-2},
// with u_{k-1} = 0 and the sum constraint eliminated by normalization:
//   f(u) = sum_j exp(u_j - u_{j+1}) + 1 / (p * (1 + sum_j exp(u_j))).
class SupportObjective {
 public:
  SupportObjective(Index k, double p) : dim_(k - 1), p_(p) {}

  Index dim() const { return dim_; }

  double value(const Eigen::VectorXd& u) const {
    double f = 0;
    double s = 1;
    for (Index j = 0; j < dim_; ++j) {
      f += std::exp(u[j] - next(u, j));
      s += std::exp(u[j]);
    }
    f += 1.0 / (p_ * s);
    return std::isfinite(f) ? f : kInf;
  }

  double evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    Eigen::VectorXd q(dim_), w(dim_);
    double s = 1;
    double f = 0;
    for (Index j = 0; j < dim_; ++j) {
      q[j] = std::exp(u[j] - next(u, j));
      w[j] = std::exp(u[j]);
      s += w[j];
      f += q[j];
    }
    const double h = 1.0 / (p_ * s);
    f += h;
    const Eigen::VectorXd pi = w / s;

    grad.resize(dim_);
    hess.setZero(dim_, dim_);
    for (Index j = 0; j < dim_; ++j) {
      grad[j] = q[j] - (j > 0 ? q[j - 1] : 0.0) - h * pi[j];
      hess(j, j) += q[j];
      if (j + 1 < dim_) {
        hess(j + 1, j + 1) += q[j];
        hess(j, j + 1) -= q[j];
        hess(j + 1, j) -= q[j];
      }
    }
    hess.noalias() += 2.0 * h * pi * pi.transpose();
    hess.diagonal() -= h * pi;
    return f;
  }

 private:
  double next(const Eigen::VectorXd& u, Index j) const { return j + 1 < dim_ ? u[j + 1] : 0.0; }

  Index dim_;
  double p_;
};

struct StartResult {
  double value = kInf;
  Eigen::VectorXd u;
  double grad_norm = kInf;
  bool converged = false;
};

// Plain Newton steps from a point already inside the tolerance, kept while
// the gradient keeps shrinking.
void polish(const SupportObjective& obj, Eigen::VectorXd& u, double& f, Eigen::VectorXd& grad,
            Eigen::MatrixXd& hess) {
  Eigen::VectorXd trial_grad;
  Eigen::MatrixXd trial_hess;
  for (int k = 0; k < 4; ++k) {
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    if (llt.info() != Eigen::Success) return;
    Eigen::VectorXd trial = u + llt.solve(-grad);
    const double ft = obj.evaluate(trial, trial_grad, trial_hess);
    if (!std::isfinite(ft) || !(trial_grad.norm() < grad.norm())) return;
    u = std::move(trial);
    f = ft;
    grad = trial_grad;
    hess = trial_hess;
  }
}

StartResult newton_minimize(const SupportObjective& obj, Eigen::VectorXd u, const OptimizerConfig& cfg) {
  const Index dim = obj.dim();
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  StartResult out;
  double f = obj.evaluate(u, grad, hess);
  if (!std::isfinite(f)) return out;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const double gnorm = grad.norm();
    if (gnorm <= cfg.stationarity_tol) {
      polish(obj, u, f, grad, hess);
      return {f, u, grad.norm(), true};
    }

    // Levenberg shift until the system is positive definite.
    Eigen::VectorXd step;
    double shift = 0;
    const double scale = std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::MatrixXd shifted = hess;
      shifted.diagonal().array() += shift;
      Eigen::LLT<Eigen::MatrixXd> llt(shifted);
      if (llt.info() == Eigen::Success) {
        step = llt.solve(-grad);
        if (step.allFinite() && step.dot(grad) < 0) break;
      }
      step.resize(0);
      shift = shift == 0 ? 1e-10 * scale : shift * 4;
    }
    if (step.size() != dim) step = -grad;

    // Backtracking with an Armijo test; near the optimum, where differences
    // in f drown in rounding, accept any step that shrinks the gradient.
    const double slope = grad.dot(step);
    Eigen::VectorXd trial_grad;
    Eigen::MatrixXd trial_hess;
    bool accepted = false;
    double t = 1.0;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      Eigen::VectorXd trial = u + t * step;
      if (trial.minCoeff() < -700 || trial.maxCoeff() > 700) continue;
      double ft = obj.evaluate(trial, trial_grad, trial_hess);
      if (!std::isfinite(ft)) continue;
      const bool armijo = ft <= f + 1e-4 * t * slope;
      const bool flat = std::abs(ft - f) <= 1e-14 * std::abs(f) && trial_grad.norm() < gnorm;
      if (armijo || flat) {
        const double previous = f;
        u = std::move(trial);
        f = ft;
        grad = trial_grad;
        hess = trial_hess;
        accepted = true;
        if (std::abs(previous - f) <= cfg.value_rtol * std::abs(f) &&
            grad.norm() <= cfg.stationarity_tol) {
          polish(obj, u, f, grad, hess);
          return {f, u, grad.norm(), true};
        }
        break;
      }
    }
    if (!accepted) break;
    // The support is collapsing toward a shorter one.
    if (u.minCoeff() < -300) break;
  }
  out.value = f;
  out.u = u;
  out.grad_norm = grad.norm();
  out.converged = out.grad_norm <= cfg.stationarity_tol;
  return out;
}

std::vector<double> suffix_from_log(const Eigen::VectorXd& u) {
  std::vector<double> x(static_cast<std::size_t>(u.size()) + 1);
  for (Index j = 0; j < u.size(); ++j) x[static_cast<std::size_t>(j)] = std::exp(u[j]);
  x.back() = 1.0;
  return x;
}

SimplexVector embed(Index n, std::vector<double> suffix) {
  const double total = std::accumulate(suffix.begin(), suffix.end(), 0.0);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  const std::size_t offset = x.size() - suffix.size();
  for (std::size_t j = 0; j < suffix.size(); ++j) x[offset + j] = suffix[j] / total;
  return SimplexVector::normalized(std::move(x));
}

// Log-coordinates of the last k entries of a warm start, extended
// geometrically on the left when the warm start is shorter.
std::optional<Eigen::VectorXd> warm_start_coordinates(const std::vector<double>& warm, Index k) {
  std::vector<double> pos;
  for (double v : warm)
    if (v > 0 || !pos.empty()) pos.push_back(v);
  if (pos.empty()) return std::nullopt;
  for (double v : pos)
    if (!(v > 0)) return std::nullopt;
  std::vector<double> tail(static_cast<std::size_t>(k));
  const Index m = static_cast<Index>(pos.size());
  for (Index j = 0; j < k; ++j) {
    Index src = m - k + j;
    tail[static_cast<std::size_t>(j)] =
        src >= 0 ? pos[static_cast<std::size_t>(src)] : pos.front() * std::exp(static_cast<double>(-src));
  }
  Eigen::VectorXd u(k - 1);
  const double last = std::log(tail.back());
  for (Index j = 0; j + 1 < k; ++j) u[j] = std::log(tail[static_cast<std::size_t>(j)]) - last;
  return u;
}

// Visits every composition of `total` into `parts` nonnegative integers.
void for_each_composition(int total, Index parts, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> c(static_cast<std::size_t>(parts), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
    if (pos + 1 == c.size()) {
      c[pos] = remaining;
      visit(c);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      c[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, total);
}

// Local grid around `center` (first dim-1 free coordinates, last absorbs the
// remainder) with spacing `h`, 2R+1 points per free coordinate.
void for_each_local_point(const std::vector<double>& center, double h, int radius,
                          const std::function<void(const std::vector<double>&)>& visit) {
  const std::size_t dim = center.size();
  std::vector<double> x(dim);
  std::function<void(std::size_t, double)> rec = [&](std::size_t pos, double used) {
    if (pos + 1 == dim) {
      double last = 1.0 - used;
      if (last < -1e-15) return;
      x[pos] = std::max(0.0, last);
      visit(x);
      return;
    }
    for (int m = -radius; m <= radius; ++m) {
      double v = center[pos] + h * m;
      if (v < 0) {
        if (v < -1e-15) continue;
        v = 0;
      }
      x[pos] = v;
      rec(pos + 1, used + v);
    }
  };
  rec(0, 0.0);
}

int local_radius(Index dim, int grid_steps, double budget) {
  if (dim <= 1) return 0;
  const double per_axis = std::pow(budget, 1.0 / static_cast<double>(dim - 1));
  int r = static_cast<int>((per_axis - 1) / 2);
  r = std::min(r, std::max(1, grid_steps / 2));
  return std::max(r, 1);
}

// Grid search followed by local refinements of spacing h -> 4h / (2R).
double grid_minimize(Index dim, int grid_steps, int refinements, double budget,
                     const std::function<double(const std::vector<double>&)>& objective,
                     const std::function<bool(const std::vector<int>&)>& admit = {}) {
  double best = kInf;
  std::vector<double> best_x;
  std::vector<double> x(static_cast<std::size_t>(dim));
  for_each_composition(grid_steps, dim, [&](const std::vector<int>& c) {
    if (admit && !admit(c)) return;
    for (std::size_t j = 0; j < c.size(); ++j) x[j] = static_cast<double>(c[j]) / grid_steps;
    double v = objective(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  });
  if (best_x.empty()) return best;

  double h = 1.0 / grid_steps;
  const int radius = local_radius(dim, grid_steps, budget);
  for (int level = 0; level < refinements && radius > 0; ++level) {
    const double fine = 2.0 * h / radius;
    const auto center = best_x;
    for_each_local_point(center, fine, radius, [&](const std::vector<double>& y) {
      double v = objective(y);
      if (v < best) {
        best = v;
        best_x = y;
      }
    });
    h = fine;
  }
  return best;
}

}  // namespace

SimplexVector::SimplexVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("simplex vector must be nonempty");
  double sum = 0;
  for (double v : entries_) {
    if (!(v >= 0) || !std::isfinite(v)) throw InputError("simplex entries must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InputError("simplex entries must sum to 1");
}

SimplexVector SimplexVector::normalized(std::vector<double> weights) {
  double sum = 0;
  for (double v : weights) {
    if (!(v >= 0) || !std::isfinite(v)) throw InputError("weights must be nonnegative");
    sum += v;
  }
  if (!(sum > 0)) throw InputError("weights must have a positive entry");
  for (double& v : weights) v /= sum;
  return SimplexVector(std::move(weights));
}

SimplexVector SimplexVector::last_unit(Index n) {
  if (n < 1) throw InputError("simplex dimension must be positive");
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  x.back() = 1.0;
  return SimplexVector(std::move(x));
}

Index SimplexVector::support() const {
  for (Index pos = 0; pos < size(); ++pos)
    if ((*this)[pos] != 0) return size() - pos;
  return 0;
}

double t_noncyclic(const SimplexVector& x, double p) {
  require_positive_p(p);
  const Index n = x.size();
  double sum = 0;
  for (Index a = 0; a + 1 < n; ++a) {
    if (x[a] == 0) continue;
    double window = 0;
    double best = 0;
    for (Index b = a + 1; b < n; ++b) {
      window += x[b];
      best = std::max(best, window / static_cast<double>(b - a));
    }
    if (best == 0)
      throw InadmissiblePair("zero forward window at offset " + std::to_string(a + 1 - n));
    sum += x[a] / best;
  }
  return sum + x[n - 1] / p;
}

double t_chain(const SimplexVector& x, double p) {
  require_positive_p(p);
  double v = chain_value(x.entries(), p);
  if (!std::isfinite(v)) throw InadmissiblePair("positive entry followed by a zero");
  return v;
}

std::vector<double> t_chain_gradient(std::span<const double> x, double p) {
  require_positive_p(p);
  const std::size_t n = x.size();
  std::vector<double> g(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!(x[a] > 0)) throw InputError("gradient requires positive entries");
    double d = a + 1 < n ? 1.0 / x[a + 1] : 1.0 / p;
    if (a > 0) d -= x[a - 1] / (x[a] * x[a]);
    g[a] = d;
  }
  return g;
}

double stationarity_residual(const SimplexVector& x, double p) {
  const Index k = x.support();
  auto tail = x.entries().subspan(static_cast<std::size_t>(x.size() - k));
  auto g = t_chain_gradient(tail, p);
  double lambda = 0;
  for (std::size_t j = 0; j < tail.size(); ++j) lambda += tail[j] * g[j];
  double sq = 0;
  for (std::size_t j = 0; j < tail.size(); ++j) {
    double r = tail[j] * (g[j] - lambda);
    sq += r * r;
  }
  return std::sqrt(sq);
}

double projected_gradient_norm(const SimplexVector& x, double p) {
  const Index k = x.support();
  auto tail = x.entries().subspan(static_cast<std::size_t>(x.size() - k));
  auto g = t_chain_gradient(tail, p);
  const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
  double sq = 0;
  for (double v : g) sq += (v - mean) * (v - mean);
  return std::sqrt(sq);
}

ReducedSolution minimize_chain(Index n, double p, const OptimizerConfig& cfg,
                               std::span<const std::vector<double>> warm_starts) {
  if (n < 1) throw InputError("N must be positive");
  require_positive_p(p);

  ReducedSolution best;
  best.n = n;
  best.p = p;
  best.minimizer = SimplexVector::last_unit(n);
  best.value = 1.0 / p;
  best.support = 1;
  best.residual = 0.0;
  best.converged = true;

  std::optional<ReducedSolution> fallback;  // best unconverged iterate
  const double kcap = std::ceil(1.0 / p);
  const Index kmax = kcap >= static_cast<double>(n) ? n : static_cast<Index>(kcap);
  int stale = 0;

  for (Index k = 2; k <= kmax && stale < cfg.patience; ++k) {
    SupportObjective obj(k, p);
    std::vector<Eigen::VectorXd> starts;
    for (double ratio : cfg.start_ratios) {
      Eigen::VectorXd u(k - 1);
      for (Index j = 0; j + 1 < k; ++j) u[j] = -static_cast<double>(k - 1 - j) * std::log(ratio);
      starts.push_back(std::move(u));
    }
    for (const auto& warm : warm_starts)
      if (auto u = warm_start_coordinates(warm, k)) starts.push_back(std::move(*u));

    StartResult chosen;
    StartResult unconverged;
    for (const auto& start : starts) {
      StartResult r = newton_minimize(obj, start, cfg);
      if (r.converged) {
        if (r.value < chosen.value) chosen = std::move(r);
      } else if (r.u.size() == k - 1 && r.value < unconverged.value) {
        unconverged = std::move(r);
      }
    }

    auto to_solution = [&](const StartResult& r, bool converged) {
      ReducedSolution s;
      s.n = n;
      s.p = p;
      s.minimizer = embed(n, suffix_from_log(r.u));
      s.value = t_chain(s.minimizer, p);
      s.support = s.minimizer.support();
      s.residual = stationarity_residual(s.minimizer, p);
      s.converged = converged;
      return s;
    };

    if (chosen.converged && chosen.value < best.value * (1 - 1e-15)) {
      best = to_solution(chosen, true);
      stale = 0;
    } else {
      ++stale;
      if (!chosen.converged && unconverged.value < best.value * (1 - 1e-15) &&
          (!fallback || unconverged.value < fallback->value)) {
        fallback = to_solution(unconverged, false);
      }
    }
  }

  if (fallback && fallback->value < best.value) {
    throw NonConvergence("no start reached the stationarity tolerance", *fallback);
  }
  return best;
}

ReducedSolution minimize_noncyclic(Index n, double p, const OptimizerConfig& cfg) {
  ReducedSolution sol = minimize_chain(n, p, cfg);
  const double chain = sol.value;
  const double plain = t_noncyclic(sol.minimizer, p);
  const double gap = std::abs(plain - chain) / std::abs(chain);
  sol.noncyclic_discrepancy = gap;
  if (gap > 1e-9)
    throw ConsistencyViolation("T and T-tilde differ by " + std::to_string(gap) +
                               " (relative) at the minimizer");
  sol.value = plain;
  return sol;
}

MinimizerStructure check_minimizer_structure(const SimplexVector& x, double p, double tol) {
  MinimizerStructure out;
  const Index k = x.support();
  const Index first = x.size() - k;
  for (Index pos = first; pos < x.size(); ++pos)
    if (x[pos] == 0) out.no_interior_zeros = false;
  for (Index pos = first + 1; pos + 1 < x.size(); ++pos)
    if (x[pos + 1] > x[pos] + tol) out.monotone_after_leftmost = false;
  if (k >= 2 && x[x.size() - 1] < p - tol) out.last_at_least_p = false;
  return out;
}

double brute_force_oracle(Index n, double p, int grid_steps, int refinements) {
  require_positive_p(p);
  if (n < 1 || grid_steps < 1) throw InputError("oracle needs N >= 1 and grid_steps >= 1");
  if (n == 1) return 1.0 / p;
  return grid_minimize(n, grid_steps, refinements, 4e6,
                       [p](const std::vector<double>& x) { return chain_value(x, p); });
}

double cyclic_bruteforce(Index n, int grid_steps, int refinements) {
  if (n < 1 || grid_steps < 1) throw InputError("cyclic brute force needs n >= 1 and grid_steps >= 1");
  if (n == 1) return 1.0;
  auto objective = [](const std::vector<double>& x) {
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0; })) return kInf;
    return max_avg_sum(PeriodicTuple<double>(x)).value;
  };
  // One representative per rotation class: a largest entry comes first.
  auto admit = [](const std::vector<int>& c) { return *std::max_element(c.begin(), c.end()) == c.front(); };
  return grid_minimize(n, grid_steps, refinements, 1e6, objective, admit);
}

std::string to_json(const ReducedSolution& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["p"] = s.p;
  j["value"] = s.value;
  j["support"] = s.support;
  j["minimizer"] = std::vector<double>(s.minimizer.entries().begin(), s.minimizer.entries().end());
  j["residual"] = s.residual;
  j["oracle_gap"] = s.oracle_gap ? nlohmann::json(*s.oracle_gap) : nlohmann::json(nullptr);
  return j.dump();
}

}  // namespace maxavg
