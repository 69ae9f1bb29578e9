#include "maxavg/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxavg/cyclic_sums.hpp"
#include "maxavg/errors.hpp"
#include "maxavg/maximal_structure.hpp"
#include "maxavg/reduced.hpp"

namespace maxavg {
namespace {

long scaled_count(long base, const VerifyOptions& o) {
  return std::max(1L, static_cast<long>(std::lround(static_cast<double>(base) * o.effort)));
}

Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

bool close_rel(double a, double b, double rtol) {
  return std::abs(a - b) <= rtol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string describe(const std::vector<double>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << v[k];
  out << ")";
  return out.str();
}

SuiteResult suite_periodic(const VerifyOptions& o) {
  SuiteResult res{"periodic"};
  Rng rng(o.seed);
  for (long t = 0; t < scaled_count(200, o); ++t) {
    const Index n = uniform_index(rng, 1, 50);
    const auto values = random_float_values(rng, n);
    PeriodicTuple<double> x(values);
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    const std::string tag = "n=" + std::to_string(n) + " x=" + describe(values);

    const Index a = uniform_index(rng, -3 * n, 3 * n);
    const Index b = a + uniform_index(rng, 0, 3 * n);
    const Index k = uniform_index(rng, -3, 3);
    res.expect(close_rel(interval_average(x, {a, b}), interval_average(x, {a + k * n, b + k * n}), 1e-12),
               "equivalent intervals disagree: " + tag);

    for (Index i = 1; i <= n; ++i) {
      const double m = right_maximal(x, i).value;
      double longer = 0;
      for (Index r = 1; r <= 3 * n; ++r) longer = std::max(longer, x.window_sum(i, r) / static_cast<double>(r));
      res.expect(longer <= m * (1 + 1e-12), "windows beyond n exceed the maximum: " + tag);
      res.expect(lo <= m * (1 + 1e-12) && m <= hi * (1 + 1e-12), "maximal function out of [min,max]: " + tag);
      res.expect(right_maximal(x, i + n).value == m, "maximal function not periodic: " + tag);
    }
  }
  return res;
}

SuiteResult suite_fullmax(const VerifyOptions& o) {
  SuiteResult res{"fullmax"};
  Rng rng(o.seed + 1);
  for (long t = 0; t < scaled_count(300, o); ++t) {
    const Index n = uniform_index(rng, 1, 50);
    PeriodicTuple<double> x(random_float_values(rng, n));
    double lowest = right_maximal(x, 1).value;
    for (Index i = 2; i <= n; ++i) lowest = std::min(lowest, right_maximal(x, i).value);
    res.expect(std::abs(lowest - x.mean()) <= 1e-12 * x.mean(), "min of maximal function != mean (float)");
  }
  for (long t = 0; t < scaled_count(60, o); ++t) {
    const Index n = uniform_index(rng, 1, 30);
    PeriodicTuple<Rational> x(random_rational_values(rng, n));
    Rational lowest = right_maximal(x, 1).value;
    for (Index i = 2; i <= n; ++i) lowest = std::min(lowest, right_maximal(x, i).value);
    res.expect(lowest == x.mean(), "min of maximal function != mean (rational)");
  }
  return res;
}

void check_poset(SuiteResult& res, const PeriodicTuple<Rational>& x, const std::string& tag) {
  IntervalPoset<Rational> poset;
  try {
    poset = build_poset(x);
  } catch (const DegenerateOrder& e) {
    res.expect(false, std::string("overlapping M-intervals: ") + e.what() + " " + tag);
    return;
  }
  res.expect(poset.is_tree(), "poset is not a tree: " + tag);
  for (auto [child, parent] : poset.edges())
    res.expect(poset.node(child).average > poset.node(parent).average, "order not reversed: " + tag);
  Index full = 0;
  for (const auto& node : poset.nodes) full += node.kappa == x.size() - 1 ? 1 : 0;
  res.expect(full == 1, "expected exactly one full maximal class: " + tag);
  if (poset.root) res.expect(poset.node(*poset.root).average == x.mean(), "root average != mean: " + tag);
}

PeriodicTuple<Rational> worked_example_tuple() {
  std::vector<Rational> v;
  for (const char* s : {"1.2", "2.3", "3.5", "1.8", "1.6", "2.4", "3", "3.2", "1.1", "2.5"})
    v.push_back(parse_rational(s));
  return PeriodicTuple<Rational>(std::move(v));
}

SuiteResult suite_poset(const VerifyOptions& o) {
  SuiteResult res{"poset"};
  {
    auto x = worked_example_tuple();
    auto poset = build_poset(x);
    res.expect(x.mean() == Rational(113, 50), "worked example mean != 2.26");
    res.expect(poset.root && *poset.root == 9, "worked example root != [9:18]");
    const std::vector<std::pair<Index, Index>> chain{{8, 7}, {7, 6}, {6, 5}, {5, 4}, {4, 1}, {1, 9}};
    for (auto [child, parent] : chain)
      res.expect(poset.parent_of(child) == parent, "worked example chain broken at " + std::to_string(child));
    auto minimal = poset.minimal_elements();
    res.expect(std::count(minimal.begin(), minimal.end(), 3) == 1 &&
                   std::count(minimal.begin(), minimal.end(), 8) == 1,
               "worked example minimal elements miss [3:3] or [8:8]");
  }
  Rng rng(o.seed + 2);
  for (long t = 0; t < scaled_count(60, o); ++t) {
    const Index n = uniform_index(rng, 2, 10);
    auto x = random_distinct_rational_tuple(rng, n);
    check_poset(res, x, "trial " + std::to_string(t));
  }
  return res;
}

SuiteResult suite_majorization(const VerifyOptions& o) {
  SuiteResult res{"majorization"};
  Rng rng(o.seed + 2);  // same tuples as the poset suite
  for (long t = 0; t < scaled_count(60, o); ++t) {
    const Index n = uniform_index(rng, 2, 10);
    auto x = random_distinct_rational_tuple(rng, n);
    Index count = 0, which = 0;
    for (Index s = 1; s <= n; ++s)
      if (has_strict_majorization(x, s)) {
        ++count;
        which = s;
      }
    res.expect(count == 1, "expected exactly one strictly majorizing rotation");
    res.expect(which == majorizing_rotation(x), "majorizing rotation != full maximal start");
  }
  return res;
}

SubsetCollectionSystem random_prop5_system(Rng& rng, Index n, Index singleton_at) {
  std::vector<std::vector<SubsetCollectionSystem::Subset>> colls(static_cast<std::size_t>(n));
  SubsetCollectionSystem::Subset all(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j + 1;
  std::bernoulli_distribution coin(0.5);
  for (Index i = 1; i <= n; ++i) {
    auto& c = colls[static_cast<std::size_t>(i - 1)];
    c.push_back(all);
    if (i == singleton_at) c.push_back({i});
    const Index extra = uniform_index(rng, 0, 3);
    for (Index e = 0; e < extra; ++e) {
      SubsetCollectionSystem::Subset s;
      for (Index j = 1; j <= n; ++j)
        if (coin(rng)) s.push_back(j);
      if (s.empty()) s.push_back(uniform_index(rng, 1, n));
      c.push_back(std::move(s));
    }
  }
  return SubsetCollectionSystem(n, std::move(colls));
}

SuiteResult suite_sums(const VerifyOptions& o) {
  SuiteResult res{"sums"};
  Rng rng(o.seed + 3);
  for (long t = 0; t < scaled_count(200, o); ++t) {
    const Index n = uniform_index(rng, 1, 30);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& e : v) e = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    PeriodicTuple<double> x(v);
    std::vector<Index> r(static_cast<std::size_t>(n));
    for (Index& e : r) e = uniform_index(rng, 1, 2 * n);
    RadiusTuple radii(r);

    const auto best = max_avg_sum(x);
    const double s = sum_with_radii(x, radii);
    res.expect(s >= best.value - 1e-12 * best.value, "envelope property violated");
    res.expect(close_rel(sum_with_radii(x, best.radii), best.value, 1e-12), "argmax radii do not reproduce the sum");
    res.expect(best.value >= 1 - 1e-12 && best.value <= static_cast<double>(n) * (1 + 1e-12),
               "max_avg_sum outside [1, n]");

    const double scale = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    res.expect(close_rel(max_avg_sum(x.scaled(scale)).value, best.value, 1e-12), "not scale invariant");
    res.expect(close_rel(sum_with_radii(x.scaled(scale), radii), s, 1e-12), "sum_with_radii not scale invariant");

    const Index shift = uniform_index(rng, 0, n - 1);
    std::vector<Index> rr(static_cast<std::size_t>(n));
    for (Index i = 1; i <= n; ++i) rr[static_cast<std::size_t>(i - 1)] = radii[wrap_index(i + shift, n)];
    res.expect(close_rel(max_avg_sum(x.rotated(shift)).value, best.value, 1e-12), "not rotation invariant");
    res.expect(close_rel(sum_with_radii(x.rotated(shift), RadiusTuple(rr)), s, 1e-12),
               "sum_with_radii not rotation invariant");
  }
  for (long t = 0; t < scaled_count(100, o); ++t) {
    const Index n = uniform_index(rng, 2, 12);
    auto system = random_prop5_system(rng, n, 1);
    for (double eps : {1e-3, 1e-6}) {
      std::vector<double> v(static_cast<std::size_t>(n), eps);
      v[0] = 1.0;
      const double g = generalized_max_sum(PeriodicTuple<double>(v), system);
      const double bound = 1 + static_cast<double>((n - 1) * n) * eps;
      res.expect(g <= bound * (1 + 1e-12), "generalized sum exceeds 1 + (n-1)n eps");
      res.expect(g >= 1 - 1e-12, "generalized sum below 1");
    }
    const double g = generalized_max_sum(PeriodicTuple<double>(random_float_values(rng, n)), system);
    res.expect(g >= 1 - 1e-12, "generalized sum below 1 on a random tuple");
  }
  return res;
}

SuiteResult suite_reduced(const VerifyOptions& o) {
  SuiteResult res{"reduced"};
  Rng rng(o.seed + 4);
  for (double p : {0.5, 0.2, 0.1, 0.05, 0.01}) {
    const std::string tag = " (p=" + std::to_string(p) + ")";
    const Index stable = static_cast<Index>(std::ceil(1 / p));
    double previous = minimize_chain(1, p).value;
    for (Index n = 2; n <= std::min<Index>(stable + 2, 14); ++n) {
      const double v = minimize_chain(n, p).value;
      res.expect(v <= previous + 1e-10, "value increased with N" + tag);
      previous = v;
    }
    const auto at = minimize_chain(stable, p);
    const auto beyond = minimize_chain(stable + 5, p);
    res.expect(close_rel(at.value, beyond.value, 1e-9), "no stabilization at ceil(1/p)" + tag);
    res.expect(check_minimizer_structure(at.minimizer, p).ok(), "minimizer structure violated" + tag);
    res.expect(at.residual <= 1e-10, "stationarity residual too large" + tag);
    try {
      minimize_noncyclic(stable, p);
      res.expect(true, "");
    } catch (const ConsistencyViolation& e) {
      res.expect(false, e.what() + tag);
    }
    for (long t = 0; t < scaled_count(20, o); ++t) {
      const Index n = uniform_index(rng, 1, 12);
      std::vector<double> w(static_cast<std::size_t>(n));
      const Index zeros = uniform_index(rng, 0, n - 1);
      for (Index j = zeros; j < n; ++j) w[static_cast<std::size_t>(j)] = std::uniform_real_distribution<double>(0.01, 1)(rng);
      auto x = SimplexVector::normalized(w);
      res.expect(t_chain(x, p) >= t_noncyclic(x, p) * (1 - 1e-12), "chain sum below non-cyclic sum" + tag);
    }
  }
  return res;
}

SuiteResult suite_reduction(const VerifyOptions&) {
  SuiteResult res{"reduction"};
  const int steps[] = {1, 2000, 300};
  for (Index n = 1; n <= 3; ++n) {
    const double reduced = minimize_chain(n, 1.0 / static_cast<double>(n)).value;
    const double cyclic = cyclic_bruteforce(n, steps[n - 1], 3);
    res.expect(cyclic >= reduced - 1e-9, "cyclic grid value below reduced minimum, n=" + std::to_string(n));
    res.expect(std::abs(cyclic - reduced) <= 1e-3, "cyclic and reduced minima differ, n=" + std::to_string(n));
  }
  return res;
}

SuiteResult suite_gradient(const VerifyOptions& o) {
  SuiteResult res{"gradient"};
  Rng rng(o.seed + 5);
  for (long t = 0; t < scaled_count(100, o); ++t) {
    const Index n = uniform_index(rng, 2, 8);
    const double p = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& e : w) e = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const auto x = SimplexVector::normalized(w);
    std::vector<double> pt(x.entries().begin(), x.entries().end());
    const auto g = t_chain_gradient(pt, p);
    double diff = 0, norm = 0;
    for (std::size_t j = 0; j < pt.size(); ++j) {
      const double h = 1e-6 * pt[j];
      auto up = pt, dn = pt;
      up[j] += h;
      dn[j] -= h;
      auto f = [&](const std::vector<double>& y) {
        double s = 0;
        for (std::size_t a = 0; a + 1 < y.size(); ++a) s += y[a] / y[a + 1];
        return s + y.back() / p;
      };
      const double fd = (f(up) - f(dn)) / (2 * h);
      diff += (fd - g[j]) * (fd - g[j]);
      norm += g[j] * g[j];
    }
    res.expect(std::sqrt(diff) <= 1e-6 * std::sqrt(norm), "analytic gradient disagrees with central differences");
  }
  return res;
}

}  // namespace

std::vector<double> random_float_values(Rng& rng, Index n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution zero(0.1);
  std::vector<double> v(static_cast<std::size_t>(n));
  bool any = false;
  for (double& e : v) {
    e = zero(rng) ? 0.0 : unit(rng);
    any = any || e > 0;
  }
  if (!any) v[0] = 0.5;
  return v;
}

std::vector<Rational> random_rational_values(Rng& rng, Index n, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

PeriodicTuple<Rational> random_distinct_rational_tuple(Rng& rng, Index n) {
  for (;;) {
    PeriodicTuple<Rational> x(random_rational_values(rng, n));
    if (has_distinct_averages(x)) return x;
  }
}

std::vector<std::string> suite_names() {
  return {"periodic", "fullmax", "poset", "majorization", "sums", "reduced", "reduction", "gradient"};
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "periodic") return suite_periodic(options);
  if (name == "fullmax") return suite_fullmax(options);
  if (name == "poset") return suite_poset(options);
  if (name == "majorization") return suite_majorization(options);
  if (name == "sums") return suite_sums(options);
  if (name == "reduced") return suite_reduced(options);
  if (name == "reduction") return suite_reduction(options);
  if (name == "gradient") return suite_gradient(options);
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace maxavg
