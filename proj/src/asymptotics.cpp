#include "maxavg/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace maxavg {

double inf_s(Index n, const OptimizerConfig& cfg) {
  if (n < 1) throw InputError("n must be positive");
  return minimize_chain(n, 1.0 / static_cast<double>(n), cfg).value;
}

std::vector<SweepRecord> sweep(std::span<const Index> n_values, const OptimizerConfig& cfg) {
  std::vector<SweepRecord> out;
  out.reserve(n_values.size());
  std::vector<std::vector<double>> warm;
  for (Index n : n_values) {
    const double p = 1.0 / static_cast<double>(n);
    ReducedSolution sol;
    bool converged = true;
    try {
      sol = minimize_chain(n, p, cfg, warm);
    } catch (const NonConvergence& e) {
      sol = e.best();
      converged = false;
    }
    SweepRecord rec;
    rec.n = n;
    rec.s_star = sol.value;
    rec.deficit = std::numbers::e * std::log(static_cast<double>(n)) - sol.value;
    rec.support = sol.support;
    rec.residual = sol.residual;
    rec.converged = converged;
    auto entries = sol.minimizer.entries();
    rec.profile.assign(entries.end() - sol.support, entries.end());
    warm.assign(1, rec.profile);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<Index> geometric_grid(double from, double to, int points) {
  std::vector<Index> out;
  if (!(from >= 1) || !(to >= from) || points < 1 || !std::isfinite(to)) return out;
  for (int k = 0; k < points; ++k) {
    double t = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    double v = from * std::pow(to / from, t);
    Index n = static_cast<Index>(std::llround(v));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

ConstantFit estimate_constant_a(std::span<const SweepRecord> records) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (r.n < 100) continue;
    xs.push_back(1.0 / std::log(static_cast<double>(r.n)));
    ys.push_back(r.deficit);
  }
  if (xs.size() < 4) throw IllConditionedFit("need at least 4 records with n >= 100");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (*hi - *lo < 1e-3) throw IllConditionedFit("regressor 1/ln n has too little spread");

  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  ConstantFit fit;
  fit.a_hat = my - slope * mx;
  fit.slope_c = -slope;
  double rss = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double r = ys[k] - (fit.a_hat + slope * xs[k]);
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  fit.used = xs.size();
  return fit;
}

double two_point_extrapolation(const SweepRecord& lo, const SweepRecord& hi) {
  const double x1 = 1.0 / std::log(static_cast<double>(lo.n));
  const double x2 = 1.0 / std::log(static_cast<double>(hi.n));
  if (x1 == x2) throw IllConditionedFit("two-point extrapolation needs distinct n");
  const double slope = (hi.deficit - lo.deficit) / (x2 - x1);
  return lo.deficit - slope * x1;
}

std::vector<double> witness_tuple(Index n) {
  if (n < 1) throw InputError("n must be positive");
  const Index len = std::min<Index>(n, std::max<Index>(1, static_cast<Index>(std::ceil(std::log(static_cast<double>(n))))));
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  double total = 0;
  for (Index i = 0; i < len; ++i) total += x[static_cast<std::size_t>(i)] = std::exp(-static_cast<double>(i));
  for (double& v : x) v /= total;
  return x;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << "n,s_star,deficit,support,residual\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%lld,%.17g\n", static_cast<long long>(r.n),
                  r.s_star, r.deficit, static_cast<long long>(r.support), r.residual);
    out << buf;
  }
}

}  // namespace maxavg
