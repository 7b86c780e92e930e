#pragma once

#include <cstdlib>
#include <ostream>
#include <string>

#include "error.hpp"
#include "rational.hpp"

namespace ratquiver {

inline bool is_squarefree(long n) {
  unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
  if (m == 0) return false;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    if (m % p == 0) m /= p;
  }
  return true;
}

/// An element a0 + a1*sqrt(d) of the quadratic field Q(sqrt(d)); d is a
/// squarefree integer different from 0 and 1. There is no default
/// constructor because the field is part of the value.
class QuadExt {
 public:
  QuadExt(Rational a0, Rational a1, long d) : a0_(std::move(a0)), a1_(std::move(a1)), d_(d) {
    if (d == 0 || d == 1 || !is_squarefree(d))
      throw error(errc::invalid_field, "d = " + std::to_string(d) + " is not a squarefree integer other than 0, 1");
  }

  static QuadExt rational(const Rational& r, long d) { return QuadExt(r, Rational(0), d); }
  static QuadExt sqrt_d(long d) { return QuadExt(Rational(0), Rational(1), d); }

  const Rational& a0() const { return a0_; }
  const Rational& a1() const { return a1_; }
  long d() const { return d_; }

  bool is_rational() const { return sgn(a1_) == 0; }

  QuadExt conj() const { return raw(a0_, -a1_, d_); }
  /// N(x) = x * conj(x) = a0^2 - d a1^2
  Rational norm() const { return Rational(a0_ * a0_ - d_ * a1_ * a1_); }

  QuadExt inverse() const {
    Rational n = norm();
    if (sgn(n) == 0) throw error(errc::singular_matrix, "division by zero in Q(sqrt(" + std::to_string(d_) + "))");
    return raw(Rational(a0_ / n), Rational(-a1_ / n), d_);
  }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return raw(Rational(x.a0_ + y.a0_), Rational(x.a1_ + y.a1_), x.d_);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return raw(Rational(x.a0_ - y.a0_), Rational(x.a1_ - y.a1_), x.d_);
  }
  friend QuadExt operator-(const QuadExt& x) { return raw(-x.a0_, -x.a1_, x.d_); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return raw(Rational(x.a0_ * y.a0_ + x.d_ * x.a1_ * y.a1_), Rational(x.a0_ * y.a1_ + x.a1_ * y.a0_), x.d_);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.d_ == y.d_ && x.a0_ == y.a0_ && x.a1_ == y.a1_;
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    if (x.is_rational()) return os << to_string(x.a0_);
    bool lead = sgn(x.a0_) != 0;
    if (lead) os << to_string(x.a0_);
    if (sgn(x.a1_) < 0)
      os << "-";
    else if (lead)
      os << "+";
    Rational c = abs(x.a1_);
    if (c != 1) os << to_string(c) << "*";
    return os << "sqrt(" << x.d_ << ")";
  }

 private:
  static QuadExt raw(Rational a0, Rational a1, long d) {
    QuadExt q;
    q.a0_ = std::move(a0);
    q.a1_ = std::move(a1);
    q.d_ = d;
    return q;
  }
  static void check(const QuadExt& x, const QuadExt& y) {
    if (x.d_ != y.d_)
      throw error(errc::mixed_field, "sqrt(" + std::to_string(x.d_) + ") and sqrt(" + std::to_string(y.d_) + ")");
  }
  QuadExt() = default;

  Rational a0_;
  Rational a1_;
  long d_ = -1;
};

inline bool is_zero(const QuadExt& x) { return sgn(x.a0()) == 0 && sgn(x.a1()) == 0; }
inline QuadExt one_like(const QuadExt& x) { return QuadExt::rational(Rational(1), x.d()); }
inline QuadExt inverse_of(const QuadExt& x) { return x.inverse(); }

}  // namespace ratquiver
