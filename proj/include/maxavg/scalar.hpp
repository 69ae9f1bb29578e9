#pragma once

// Arithmetic backends. Every tuple-level algorithm is a template over the
// scalar type and is instantiated for `double` and `Rational`.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace maxavg {

using Index = std::int64_t;
using Rational = mpq_class;

enum class Backend { Float, Rational };

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

template <class T>
T from_index(Index v);
template <>
inline double from_index<double>(Index v) {
  return static_cast<double>(v);
}
template <>
inline Rational from_index<Rational>(Index v) {
  return Rational(static_cast<long>(v));
}

// Parses "p/q", an integer, or a decimal literal ("1.25", "-3e-2") exactly.
Rational parse_rational(std::string_view text);

// Exact rational value of the shortest decimal string that round-trips `v`.
// 0.1 maps to 1/10, not to the binary fraction nearest 0.1.
Rational rational_from_shortest_decimal(double v);

// Shortest round-trip decimal representation of a double.
std::string shortest_decimal(double v);

std::string to_string(const Rational& v);
std::string to_string(double v);

// Rounds half away from zero to `digits` decimals and strips trailing zeros,
// as in "2.3", "3", "2.333". Doubles are first cut to 12 significant digits,
// so a sum that lands on 2.2874999999999996 still prints as 2.288.
std::string format_rounded(const Rational& v, int digits);
std::string format_rounded(double v, int digits);

}  // namespace maxavg
