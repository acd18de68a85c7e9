#pragma once

// Distance scalars. Exact rationals for constructed instances, doubles for
// generated Euclidean instances.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace fairkc {

using Rational = boost::rational<std::int64_t>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational tolerance() { return Rational(0); }
  static double to_double(const Rational& v) {
    return static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "double";
  static double tolerance() { return 1e-9; }
  static double to_double(double v) { return v; }
};

template <class S>
concept DistanceScalar = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { a < b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { scalar_traits<S>::tolerance() } -> std::convertible_to<S>;
};

template <DistanceScalar S>
double to_double(const S& v) {
  return scalar_traits<S>::to_double(v);
}

// "7/2" or "7" for rationals; shortest round-trip form for doubles.
inline std::string to_string(const Rational& v) {
  if (v.denominator() == 1) return std::to_string(v.numerator());
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

inline std::string to_string(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

namespace detail {

inline std::int64_t parse_int64(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("empty integer in rational '" + std::string(whole) + "'");
  std::size_t pos = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  std::int64_t value = 0;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    if (value > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10)
      throw std::out_of_range("rational component overflows int64: '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

}  // namespace detail

// Accepts "p/q", integers and finite decimals ("2.5" -> 5/2).
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto num = detail::parse_int64(text.substr(0, slash), text);
    const auto den = detail::parse_int64(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(detail::parse_int64(text, text));
  std::string digits(text.substr(0, dot));
  const auto frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 17) throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  digits += frac;
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational(detail::parse_int64(digits, text), den);
}

}  // namespace fairkc
