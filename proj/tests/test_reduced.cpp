#include <doctest.h>

#include <cmath>

#include "maxavg/errors.hpp"
#include "maxavg/reduced.hpp"
#include "oracles.hpp"

using namespace maxavg;

TEST_CASE("simplex vectors") {
  CHECK_THROWS_AS(SimplexVector({0.5, 0.6}), InputError);
  CHECK_THROWS_AS(SimplexVector({1.5, -0.5}), InputError);
  auto x = SimplexVector::normalized({0, 1, 3});
  CHECK(x[2] == doctest::Approx(0.75));
  CHECK(x.at_offset(0) == doctest::Approx(0.75));
  CHECK(x.at_offset(-2) == 0);
  CHECK(x.support() == 2);
  CHECK(SimplexVector::last_unit(4).support() == 1);
}

TEST_CASE("objectives on small vectors") {
  SimplexVector half({0.5, 0.5});
  CHECK(t_chain(half, 0.5) == doctest::Approx(2.0));
  // m^+ of x_{-1} is x_0 (window of length 1 only)
  CHECK(t_noncyclic(half, 0.5) == doctest::Approx(2.0));
  SimplexVector three({0.2, 0.2, 0.6});
  CHECK(t_chain(three, 0.25) == doctest::Approx(1 + 1.0 / 3 + 2.4));
  CHECK(t_noncyclic(three, 0.25) == doctest::Approx(0.2 / 0.4 + 0.2 / 0.6 + 2.4));
  CHECK(t_chain(SimplexVector({0, 0, 1}), 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(t_chain(SimplexVector({1, 0}), 0.5), InadmissiblePair);
  CHECK_THROWS_AS(t_chain(half, 0), InputError);
}

TEST_CASE("closed-form minima") {
  CHECK(minimize_chain(1, 1).value == doctest::Approx(1).epsilon(1e-12));
  auto s2 = minimize_chain(2, 0.5);
  CHECK(s2.value == doctest::Approx(oracle::chain_n2_half()).epsilon(1e-12));
  CHECK(s2.support == 2);
  CHECK(s2.minimizer[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(minimize_chain(3, 1.0 / 3).value == doctest::Approx(oracle::chain_n3_third()).epsilon(1e-12));
  for (double p : {1.0, 1.5, 4.0}) {
    auto s = minimize_chain(6, p);
    CHECK(s.value == doctest::Approx(1 / p).epsilon(1e-12));
    CHECK(s.support == 1);
    CHECK(s.minimizer[5] == 1);
  }
}

TEST_CASE("values cross-checked by an independent quasi-Newton run") {
  // frozen output of a BFGS + Nelder-Mead multi-start in log coordinates
  struct Case { Index n; double p; double value; Index support; };
  const Case cases[] = {{5, 0.2, 3.4491270783376704, 3},
                        {7, 0.2, 3.4491270783376704, 3},
                        {10, 0.1, 4.958489208286721, 3},
                        {20, 0.05, 6.6536840027659, 4},
                        {100, 0.01, 10.868500667786545, 5}};
  for (const auto& c : cases) {
    CAPTURE(c.n);
    auto s = minimize_chain(c.n, c.p);
    CHECK(s.value == doctest::Approx(c.value).epsilon(1e-10));
    CHECK(s.support == c.support);
    CHECK(s.converged);
  }
}

TEST_CASE("grid oracle brackets the optimizer from above") {
  for (Index n : {2, 3, 4}) {
    const double p = 1.0 / static_cast<double>(n);
    const double v = minimize_chain(n, p).value;
    const double grid = brute_force_oracle(n, p, n == 2 ? 400 : 60, 4);
    CAPTURE(n);
    CHECK(grid >= v - 1e-12);
    CHECK(grid - v <= 1e-4);
  }
  CHECK(minimize_chain(4, 0.25).value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("minimizer structure and stationarity") {
  for (double p : {0.5, 0.3, 0.2, 0.1, 0.05, 0.01}) {
    const Index n = static_cast<Index>(std::ceil(1 / p)) + 2;
    auto s = minimize_chain(n, p);
    CAPTURE(p);
    CHECK(check_minimizer_structure(s.minimizer, p).ok());
    CHECK(s.residual <= 1e-10);
    CHECK(projected_gradient_norm(s.minimizer, p) <= 1e-10);
    auto nc = minimize_noncyclic(n, p);
    CHECK(nc.noncyclic_discrepancy <= 1e-9);
    CHECK(nc.value == doctest::Approx(s.value).epsilon(1e-9));
  }
}

TEST_CASE("structure check flags violations") {
  auto bad = check_minimizer_structure(SimplexVector({0.3, 0, 0.7}), 0.5);
  CHECK_FALSE(bad.no_interior_zeros);
  auto dec = check_minimizer_structure(SimplexVector({0.1, 0.2, 0.3, 0.4}), 0.5);
  CHECK_FALSE(dec.monotone_after_leftmost);
  CHECK_FALSE(dec.last_at_least_p);
  CHECK(check_minimizer_structure(SimplexVector({0, 0.4, 0.6}), 0.5).ok());
}

TEST_CASE("gradient matches central differences") {
  std::vector<double> x{0.1, 0.15, 0.3, 0.45};
  const double p = 0.2;
  auto g = t_chain_gradient(x, p);
  for (std::size_t j = 0; j < x.size(); ++j)
    CHECK(g[j] == doctest::Approx(oracle::chain_partial(x, p, j, 1e-6)).epsilon(1e-7));
}

TEST_CASE("warm starts do not change the optimum") {
  auto cold = minimize_chain(50, 0.02);
  auto tail = cold.minimizer.entries();
  std::vector<std::vector<double>> warm{std::vector<double>(tail.end() - cold.support, tail.end())};
  auto hot = minimize_chain(60, 1.0 / 60, {}, warm);
  CHECK(hot.value <= minimize_chain(60, 1.0 / 60).value + 1e-12);
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(minimize_chain(0, 0.5), InputError);
  CHECK_THROWS_AS(minimize_chain(3, -1), InputError);
}

TEST_CASE("solution JSON keys") {
  auto s = to_json(minimize_chain(2, 0.5));
  for (const char* key : {"\"n\"", "\"p\"", "\"value\"", "\"support\"", "\"minimizer\"", "\"residual\"", "\"oracle_gap\""})
    CHECK(s.find(key) != std::string::npos);
}

TEST_CASE("uniform and decreasing vectors") {
  for (Index n : {1, 2, 5, 9}) {
    std::vector<double> u(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    const double p = 0.3;
    CHECK(t_chain(SimplexVector(u), p) == doctest::Approx(static_cast<double>(n - 1) + 1 / (static_cast<double>(n) * p)));
  }
  SimplexVector dec = SimplexVector::normalized({5, 4, 2, 1});
  CHECK(t_noncyclic(dec, 0.4) == t_chain(dec, 0.4));
  CHECK(t_chain(SimplexVector::last_unit(7), 0.125) == 8);
}

TEST_CASE("chain and non-cyclic minima agree") {
  for (auto [n, p] : {std::pair<Index, double>{2, 0.5}, {4, 0.25}, {6, 1.0}}) {
    auto c = minimize_chain(n, p);
    auto nc = minimize_noncyclic(n, p);
    CHECK(nc.value == doctest::Approx(c.value).epsilon(1e-9));
  }
  CHECK(minimize_noncyclic(3, 1).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid oracles at the documented resolutions") {
  CHECK(brute_force_oracle(1, 0.7, 10, 0) == doctest::Approx(1 / 0.7));
  CHECK(std::abs(brute_force_oracle(2, 0.5, 1000, 3) - oracle::chain_n2_half()) <= 1e-4);
  CHECK(std::abs(brute_force_oracle(3, 1.0 / 3, 300, 3) - oracle::chain_n3_third()) <= 1e-4);
  CHECK(cyclic_bruteforce(1, 5) == 1);
  CHECK(std::abs(cyclic_bruteforce(2, 2000) - oracle::chain_n2_half()) <= 1e-3);
  CHECK(std::abs(cyclic_bruteforce(3, 300, 3) - oracle::chain_n3_third()) <= 1e-2);
}
