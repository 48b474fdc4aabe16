#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "xsep/errors.hpp"

namespace xsep {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// Scalar helpers shared by the double and exact-rational instantiations.
namespace num {

template <class S>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

inline double sqrt_of(double x) { return std::sqrt(x); }

inline BigInt exact_isqrt(const BigInt& n) {
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) throw InexactValue("square root of " + n.str() + " is irrational");
  return r;
}

inline Rational sqrt_of(const Rational& x) {
  if (x < 0) throw InexactValue("square root of a negative rational");
  BigInt n = boost::multiprecision::numerator(x);
  BigInt d = boost::multiprecision::denominator(x);
  return Rational(exact_isqrt(n), exact_isqrt(d));
}

inline double abs_of(double x) { return std::abs(x); }
inline Rational abs_of(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class S>
S from_ratio(long long n, long long d);
template <>
inline double from_ratio<double>(long long n, long long d) {
  return static_cast<double>(n) / static_cast<double>(d);
}
template <>
inline Rational from_ratio<Rational>(long long n, long long d) {
  return Rational(BigInt(n), BigInt(d));
}

template <class S>
S from_double_exact(double x);
template <>
inline double from_double_exact<double>(double x) { return x; }
template <>
inline Rational from_double_exact<Rational>(double x) { return Rational(x); }

template <class S>
S default_tol();
template <>
inline double default_tol<double>() { return 1e-9; }
template <>
inline Rational default_tol<Rational>() { return Rational(0); }

// Accepts "p/q", integers, and plain decimals ("-0.25", "2.5e-3").
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&](const char* why) { return IoError("cannot parse rational '" + s + "': " + why); };
  if (s.empty()) throw bad("empty");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) throw bad("missing numerator or denominator");
    try {
      BigInt n(num), d(den);
      if (d == 0) throw bad("zero denominator");
      return Rational(n, d);
    } catch (const std::runtime_error&) {
      throw bad("not an integer ratio");
    }
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
  BigInt mant = 0;
  long long frac_digits = 0, exponent = 0;
  bool any_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      any_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && any_digit) {
      try {
        exponent = std::stoll(s.substr(i + 1));
      } catch (const std::exception&) {
        throw bad("malformed exponent");
      }
      i = s.size() - 1;
      break;
    } else {
      throw bad("unexpected character");
    }
  }
  if (!any_digit) throw bad("no digits");
  Rational r(mant);
  long long shift = exponent - frac_digits;
  BigInt p10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
  if (shift >= 0)
    r *= Rational(p10);
  else
    r /= Rational(p10);
  return neg ? Rational(-r) : r;
}

template <class S>
S parse(std::string_view text);
template <>
inline Rational parse<Rational>(std::string_view text) { return parse_rational(text); }
template <>
inline double parse<double>(std::string_view text) { return parse_rational(text).convert_to<double>(); }

inline std::string str_of(const Rational& x) {
  BigInt n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline std::string str_of(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace num
}  // namespace xsep
