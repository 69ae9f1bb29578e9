#include <doctest.h>

#include <random>

#include "maxavg/errors.hpp"
#include "maxavg/periodic.hpp"
#include "maxavg/verification.hpp"
#include "oracles.hpp"

using namespace maxavg;

TEST_CASE("construction validates entries") {
  CHECK_THROWS_AS(PeriodicTuple<double>(std::vector<double>{}), InputError);
  CHECK_THROWS_AS(PeriodicTuple<double>({0.0, 0.0}), InputError);
  CHECK_THROWS_AS(PeriodicTuple<double>({1.0, -0.5}), InputError);
  CHECK_NOTHROW(PeriodicTuple<double>({0.0, 2.0}));
}

TEST_CASE("rational entries are stored in lowest terms") {
  PeriodicTuple<Rational> x({Rational(6, 4), Rational(2, 4)});
  CHECK(x.value(1) == Rational(3, 2));
  CHECK(x.mean() == 1);
}

TEST_CASE("indices wrap modulo n") {
  PeriodicTuple<double> x({1, 2, 3});
  CHECK(x.value(0) == 3);
  CHECK(x.value(4) == 1);
  CHECK(x.value(-5) == 1);
  CHECK(wrap_index(7, 3) == 1);
  CHECK(wrap_index(-3, 3) == 3);
}

TEST_CASE("window sums span periods") {
  PeriodicTuple<Rational> x({Rational(1), Rational(2), Rational(3)});
  CHECK(x.window_sum(1, 0) == 0);
  CHECK(x.window_sum(3, 2) == 4);
  CHECK(x.window_sum(2, 7) == 14);
  CHECK(x.window_sum(-4, 3) == 6);
  CHECK(x.total() == 6);
  CHECK(x.mean() == 2);
}

TEST_CASE("interval_average is invariant under equivalence") {
  PeriodicTuple<Rational> x({Rational(1), Rational(5), Rational(2), Rational(7)});
  IndexInterval a{2, 5}, b{6, 9}, c{-2, 1};
  CHECK(a.equivalent(b, 4));
  CHECK(a.equivalent(c, 4));
  CHECK(interval_average(x, a) == interval_average(x, b));
  CHECK(interval_average(x, a) == interval_average(x, c));
  CHECK(interval_average(x, a) == Rational(15, 4));
}

TEST_CASE("right_maximal prefers the shortest maximizing window") {
  PeriodicTuple<double> x({1, 1, 1});
  auto m = right_maximal(x, 2);
  CHECK(m.value == 1);
  CHECK(m.length == 1);
  PeriodicTuple<double> y({0, 3, 3, 0});
  auto my = right_maximal(y, 1);
  CHECK(my.value == doctest::Approx(2.0));
  CHECK(my.length == 3);
  CHECK(forward_max_average(y, 4).length == my.length);
}

TEST_CASE("right_maximal matches a direct computation") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const Index n = std::uniform_int_distribution<Index>(1, 25)(rng);
    auto values = random_rational_values(rng, n, 9, 4);
    PeriodicTuple<Rational> x(values);
    for (Index i = -n; i <= 2 * n; ++i) {
      auto [value, kappa] = oracle::right_max(values, i);
      auto m = right_maximal(x, i);
      REQUIRE(m.value == value);
      REQUIRE(m.length == kappa + 1);
    }
  }
}

TEST_CASE("rotation and scaling") {
  PeriodicTuple<double> x({1, 2, 3, 4});
  auto r = x.rotated(1);
  CHECK(r.value(1) == 2);
  CHECK(r.value(4) == 1);
  CHECK(x.rotated(-1).value(1) == 4);
  CHECK(x.scaled(2).total() == 20);
}
