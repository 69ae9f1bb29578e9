#include <doctest.h>

#include "maxavg/errors.hpp"
#include "maxavg/io.hpp"
#include "maxavg/scalar.hpp"

using namespace maxavg;

TEST_CASE("parse_rational reads fractions, integers and decimals exactly") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("1.2") == Rational(6, 5));
  CHECK(parse_rational("2.5e-1") == Rational(1, 4));
  CHECK(parse_rational("-3e2") == Rational(-300));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("doubles enter the rational backend through their shortest decimal") {
  CHECK(rational_from_shortest_decimal(1.2) == Rational(6, 5));
  CHECK(rational_from_shortest_decimal(0.1) == Rational(1, 10));
  CHECK(rational_from_shortest_decimal(3.0) == Rational(3));
  CHECK(shortest_decimal(2.26) == "2.26");
}

TEST_CASE("format_rounded rounds half away from zero and strips zeros") {
  CHECK(format_rounded(Rational(183, 80), 3) == "2.288");  // 2.2875
  CHECK(format_rounded(Rational(191, 90), 3) == "2.122");
  CHECK(format_rounded(Rational(7, 3), 3) == "2.333");
  CHECK(format_rounded(Rational(5, 2), 3) == "2.5");
  CHECK(format_rounded(Rational(2), 3) == "2");
  CHECK(format_rounded(Rational(-1, 8), 2) == "-0.13");
  CHECK(format_rounded(18.3 / 8, 3) == "2.288");
  CHECK(format_rounded(2.0005, 3) == "2.001");
  CHECK(format_rounded(1.0 / 3, 3) == "0.333");
}

TEST_CASE("parse_tuple accepts numbers and p/q strings") {
  auto xf = parse_tuple<double>(R"({"values": [1, 2.5, "1/4"]})");
  REQUIRE(xf.size() == 3);
  CHECK(xf.value(3) == doctest::Approx(0.25));
  auto xr = parse_tuple<Rational>(R"({"values": [1.2, "1/3", 0]})");
  CHECK(xr.value(1) == Rational(6, 5));
  CHECK(xr.value(2) == Rational(1, 3));
  CHECK(xr.value(3) == 0);
}

TEST_CASE("parse_tuple rejects malformed input") {
  CHECK_THROWS_AS(parse_tuple<double>("not json"), InputError);
  CHECK_THROWS_AS(parse_tuple<double>(R"({"vals": [1]})"), InputError);
  CHECK_THROWS_AS(parse_tuple<double>(R"({"values": []})"), InputError);
  CHECK_THROWS_AS(parse_tuple<double>(R"({"values": [0, 0]})"), InputError);
  CHECK_THROWS_AS(parse_tuple<double>(R"({"values": [1, -1]})"), InputError);
  CHECK_THROWS_AS(parse_tuple<Rational>(R"({"values": [1, "-1/2"]})"), InputError);
  CHECK_THROWS_AS(parse_tuple<double>(R"({"values": [true]})"), InputError);
}

TEST_CASE("radii and subset systems") {
  auto r = parse_radii(R"({"radii": [1, 2, 3]})");
  CHECK(r.size() == 3);
  CHECK(r[2] == 2);
  CHECK_THROWS_AS(parse_radii(R"({"radii": [0]})"), InputError);
  auto s = parse_subset_system(R"({"collections": [[[1,2]], [[2],[1,2]]]})");
  CHECK(s.size() == 2);
  CHECK(s.collection(2).size() == 2);
  CHECK_THROWS_AS(parse_subset_system(R"({"collections": [[[3]], [[1]]]})"), InputError);
}
