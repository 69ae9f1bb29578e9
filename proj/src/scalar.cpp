#include "maxavg/scalar.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "maxavg/errors.hpp"

namespace maxavg {
namespace {

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

mpz_class parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty integer literal");
  if (s[0] == '+') s.erase(0, 1);
  for (std::size_t k = (s[0] == '-' ? 1 : 0); k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw InputError("invalid integer literal '" + std::string(text) + "'");
  }
  return mpz_class(s, 10);
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty())
    throw InputError("invalid number literal '" + std::string(text) + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    auto exp_text = text.substr(pos + 1);
    auto [ptr, ec] = std::from_chars(
        exp_text.data() + (!exp_text.empty() && exp_text[0] == '+' ? 1 : 0),
        exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size())
      throw InputError("invalid exponent in '" + std::string(text) + "'");
    pos = text.size();
  }
  if (pos != text.size())
    throw InputError("invalid number literal '" + std::string(text) + "'");

  mpz_class num(digits, 10);
  mpz_class den = 1;
  long shift = exponent - frac_digits;
  if (shift >= 0)
    num *= pow10(shift);
  else
    den = pow10(-shift);
  Rational r(num, den);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0)
    throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string shortest_decimal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Rational rational_from_shortest_decimal(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite value");
  return parse_decimal(shortest_decimal(v));
}

std::string to_string(const Rational& v) { return v.get_str(); }
std::string to_string(double v) { return shortest_decimal(v); }

std::string format_rounded(const Rational& v, int digits) {
  const bool negative = sgn(v) < 0;
  Rational scaled = abs(v) * Rational(pow10(digits));
  scaled += Rational(1, 2);
  mpz_class n = scaled.get_num() / scaled.get_den();  // floor, scaled >= 0
  std::string s = n.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (negative && s != "0") s.insert(0, "-");
  return s;
}

std::string format_rounded(double v, int digits) {
  if (!std::isfinite(v)) return shortest_decimal(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return format_rounded(parse_decimal(buf), digits);
}

}  // namespace maxavg
