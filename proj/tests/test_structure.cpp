#include <doctest.h>

#include <algorithm>

#include "maxavg/errors.hpp"
#include "maxavg/maximal_structure.hpp"
#include "maxavg/verification.hpp"
#include "oracles.hpp"

using namespace maxavg;

namespace {

PeriodicTuple<Rational> example10() {
  std::vector<Rational> v;
  for (const char* s : {"1.2", "2.3", "3.5", "1.8", "1.6", "2.4", "3", "3.2", "1.1", "2.5"})
    v.push_back(parse_rational(s));
  return PeriodicTuple<Rational>(v);
}

}  // namespace

TEST_CASE("M-intervals of the ten-term example") {
  auto x = example10();
  auto recs = m_intervals(x);
  const Index kappa[] = {7, 1, 0, 4, 3, 2, 1, 0, 9, 0};
  for (Index i = 1; i <= 10; ++i) {
    CAPTURE(i);
    CHECK(recs[i - 1].start == i);
    CHECK(recs[i - 1].kappa == kappa[i - 1]);
  }
  CHECK(recs[0].average == Rational(19, 8));
  CHECK(recs[8].average == Rational(113, 50));
  CHECK(recs[9].average == Rational(5, 2));
  CHECK(full_maximal_start(x) == 9);
  CHECK(majorizing_rotation(x) == 9);
  CHECK(has_strict_majorization(x, 9));
}

TEST_CASE("rotation of the ten-term example") {
  auto x = example10();
  auto r = x.rotated(8);
  CHECK(r.value(1) == Rational(11, 10));
  CHECK(r.value(2) == Rational(5, 2));
  Rational partial = 0;
  for (Index k = 1; k < 10; ++k) {
    partial += r.value(k);
    CHECK(partial < Rational(113, 50) * k);
  }
}

TEST_CASE("constant tuple has only the non-strict rotation") {
  PeriodicTuple<Rational> c({Rational(4), Rational(4), Rational(4)});
  CHECK(majorizing_rotation(c) == 1);
  CHECK_FALSE(has_strict_majorization(c, 1));
  CHECK(c.window_sum(1, 2) == 2 * c.mean());
}

TEST_CASE("poset of the ten-term example") {
  auto x = example10();
  auto poset = build_poset(x);
  REQUIRE(poset.root);
  CHECK(*poset.root == 9);
  CHECK(poset.is_tree());
  const std::vector<std::pair<Index, Index>> edges{{1, 9}, {2, 1}, {3, 2}, {4, 1}, {5, 4},
                                                   {6, 5}, {7, 6}, {8, 7}, {10, 9}};
  CHECK(poset.edges() == edges);
  CHECK(poset.maximal_elements() == std::vector<Index>{9});
  CHECK(poset.minimal_elements() == std::vector<Index>{3, 8, 10});
  auto json = poset_to_json(poset);
  CHECK(json.find("\"root\"") != std::string::npos);
  CHECK(json.find("average_exact") != std::string::npos);
  auto dot = poset_to_dot(poset);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("n8 -> n7") != std::string::npos);
}

TEST_CASE("constant tuple: every window is maximal") {
  PeriodicTuple<double> x({2, 2, 2, 2});
  CHECK(full_maximal_start(x) == 1);
  for (const auto& r : m_intervals(x)) CHECK(r.kappa == 0);
  CHECK_FALSE(has_distinct_averages(x));
  auto poset = build_poset(x);
  CHECK_FALSE(poset.root);
  CHECK(poset.edges().empty());
  CHECK(poset.minimal_elements().size() == 4);
  CHECK(poset.maximal_elements().size() == 4);
  CHECK_FALSE(poset.is_tree());
}

TEST_CASE("single-entry tuple") {
  PeriodicTuple<Rational> x({Rational(3)});
  CHECK(full_maximal_start(x) == 1);
  CHECK(has_strict_majorization(x, 1));
  auto poset = build_poset(x);
  CHECK(poset.is_tree());
  CHECK(poset.root == Index{1});
}

TEST_CASE("ties resolve to the shortest window") {
  PeriodicTuple<Rational> x({Rational(1), Rational(3), Rational(1), Rational(0)});
  auto recs = m_intervals(x);
  CHECK(recs[0].kappa == 1);
  CHECK(recs[1].kappa == 0);
  // windows from 1 of lengths 1 and 2 both average 2
  PeriodicTuple<Rational> y({Rational(2), Rational(2), Rational(0)});
  CHECK(m_interval(y, 1).kappa == 0);
  CHECK_NOTHROW(build_poset(y));
}

TEST_CASE("kappa and the rotation agree with direct computation") {
  Rng rng(11);
  for (int t = 0; t < 150; ++t) {
    const Index n = std::uniform_int_distribution<Index>(1, 12)(rng);
    auto values = random_rational_values(rng, n, 50, 7);
    PeriodicTuple<Rational> x(values);
    auto recs = m_intervals(x);
    for (Index i = 1; i <= n; ++i) {
      auto [value, kappa] = oracle::right_max(values, i);
      REQUIRE(recs[i - 1].kappa == kappa);
      REQUIRE(recs[i - 1].average == value);
      REQUIRE(has_strict_majorization(x, i) == oracle::strict_rotation(values, i));
    }
    if (has_distinct_averages(x)) {
      long strict = 0;
      for (Index i = 1; i <= n; ++i) strict += oracle::strict_rotation(values, i) ? 1 : 0;
      CHECK(strict == 1);
      CHECK(oracle::strict_rotation(values, majorizing_rotation(x)));
    }
  }
}

TEST_CASE("distinct-averages surrogate") {
  PeriodicTuple<Rational> a({Rational(1), Rational(2), Rational(4)});
  CHECK(has_distinct_averages(a));
  // [1:1] and [2:3] share the average 2
  PeriodicTuple<Rational> b({Rational(2), Rational(1), Rational(3)});
  CHECK_FALSE(has_distinct_averages(b));
  // a short interval average equal to the mean
  PeriodicTuple<Rational> c({Rational(1), Rational(2), Rational(3)});
  CHECK_FALSE(has_distinct_averages(c));
}
