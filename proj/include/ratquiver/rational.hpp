#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "error.hpp"

namespace ratquiver {

/// Exact rational number, always kept in canonical form by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw error(errc::parse_error, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or "-p/q" (decimal integers only).
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw error(errc::parse_error, "not a rational literal: '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw error(errc::parse_error, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Renders as "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational inverse_of(const Rational& x) {
  if (sgn(x) == 0) throw error(errc::singular_matrix, "division by zero");
  return Rational(1 / x);
}

/// max(|num|, den)
inline Integer height(const Rational& r) {
  Integer n = abs(r.get_num());
  return n > r.get_den() ? n : Integer(r.get_den());
}

}  // namespace ratquiver
