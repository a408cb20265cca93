#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "cosymp/error.hpp"

namespace cosymp {

using Rational = mpq_class;

/// Default tolerance for float-mode linear algebra (comparisons, pivots).
inline constexpr double kTolLin = 1e-9;

enum class ScalarMode { Exact, Float };

inline std::string_view to_string(ScalarMode mode) {
  return mode == ScalarMode::Exact ? "exact" : "float";
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Float;
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_int(std::int64_t v) { return static_cast<double>(v); }
  // |x| <= threshold; the threshold is already scaled by the caller.
  static bool negligible(double x, double threshold) { return std::fabs(x) <= threshold; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Exact;
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_int(std::int64_t v) { return Rational(static_cast<long>(v)); }
  static bool negligible(const Rational& x, double) { return sgn(x) == 0; }
};

template <class T>
inline bool is_exact_v = ScalarTraits<T>::exact;

/// Parses "p/q", "-12", "0.125" or "3e-2" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0) {
      throw Error(ErrorCode::ParseError, "malformed rational literal '" + s + "'");
    }
    r.canonicalize();
    return r;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw Error(ErrorCode::ParseError, "malformed number '" + s + "'");
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') {
      throw Error(ErrorCode::ParseError, "malformed number '" + s + "'");
    }
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(pos + 1), &used);
      if (pos + 1 + used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "malformed exponent in '" + s + "'");
    }
  }
  mpz_class num(digits, 10);
  long shift = exponent - scale;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace cosymp
