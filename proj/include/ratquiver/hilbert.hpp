#pragma once

#include <gmp.h>

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace ratquiver {

/// Largest height accepted where trial-division factorization is needed.
inline const Integer kHeightCap = 1'000'000;

inline bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

/// A place of Q: a prime, or the real place (prime == 0).
struct Place {
  unsigned long prime = 0;

  static Place infinity() { return {0}; }
  static Place at(unsigned long p) {
    if (!is_prime(p)) throw error(errc::invalid_place, std::to_string(p) + " is not a prime");
    return {p};
  }
  bool is_infinite() const { return prime == 0; }
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(prime); }

  friend auto operator<=>(const Place&, const Place&) = default;
};

/// Integer in the same square class as r (num * den).
inline Integer square_class_integer(const Rational& r) { return Integer(r.get_num() * r.get_den()); }

inline void require_height(const Rational& r, const char* what) {
  if (height(r) > kHeightCap)
    throw error(errc::height_cap, std::string(what) + " = " + to_string(r) + " exceeds the height cap " + kHeightCap.get_str());
}

/// Primes dividing n, ascending (trial division).
inline std::vector<unsigned long> prime_divisors(Integer n) {
  n = abs(n);
  std::vector<unsigned long> out;
  for (unsigned long p = 2; Integer(p) * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.push_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  if (n > 1) out.push_back(n.get_ui());
  return out;
}

/// n = s^2 * core with core squarefree; returns core (sign kept).
inline Integer squarefree_core(const Integer& n, Integer* root = nullptr) {
  Integer m = abs(n), core = 1, s = 1;
  for (unsigned long p : prime_divisors(m)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) s *= p;
    if (e % 2) core *= p;
  }
  if (root) *root = s;
  return sgn(n) < 0 ? Integer(-core) : core;
}

namespace detail {

/// n = p^alpha * u with u prime to p.
inline unsigned split_valuation(Integer& n, unsigned long p) {
  unsigned alpha = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    n /= p;
    ++alpha;
  }
  return alpha;
}

inline unsigned long mod_ui(const Integer& n, unsigned long m) { return mpz_fdiv_ui(n.get_mpz_t(), m); }

}  // namespace detail

/// Hilbert symbol (a, b)_v over Q, by the explicit formulas for odd p,
/// p = 2 and the real place.
inline int hilbert_symbol(const Rational& a, const Rational& b, Place place) {
  if (sgn(a) == 0 || sgn(b) == 0) throw error(errc::invalid_field, "Hilbert symbol of zero");
  if (place.is_infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  unsigned long p = place.prime;
  if (!is_prime(p)) throw error(errc::invalid_place, std::to_string(p) + " is not a prime");
  Integer u = square_class_integer(a), v = square_class_integer(b);
  unsigned alpha = detail::split_valuation(u, p), beta = detail::split_valuation(v, p);
  int exponent = 0;
  if (p == 2) {
    auto eps = [](const Integer& x) { return detail::mod_ui(x, 4) == 3 ? 1 : 0; };
    auto omega = [](const Integer& x) {
      unsigned long r = detail::mod_ui(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    exponent = eps(u) * eps(v) + static_cast<int>(alpha) * omega(v) + static_cast<int>(beta) * omega(u);
    return exponent % 2 ? -1 : 1;
  }
  int sign = 1;
  if ((alpha * beta) % 2 && (p % 4) == 3) sign = -sign;
  Integer pp(p);
  if (beta % 2) sign *= mpz_legendre(u.get_mpz_t(), pp.get_mpz_t());
  if (alpha % 2) sign *= mpz_legendre(v.get_mpz_t(), pp.get_mpz_t());
  return sign;
}

struct PlaceCertificate {
  Place place;
  int symbol;

  friend bool operator==(const PlaceCertificate&, const PlaceCertificate&) = default;
};

/// The real place, 2, and every odd prime dividing a numerator or
/// denominator of the given values; real place first, then primes ascending.
inline std::vector<Place> relevant_places(const std::vector<Rational>& values) {
  std::set<unsigned long> primes{2};
  for (const auto& r : values) {
    require_height(r, "value");
    for (auto p : prime_divisors(r.get_num())) primes.insert(p);
    for (auto p : prime_divisors(r.get_den())) primes.insert(p);
  }
  std::vector<Place> out{Place::infinity()};
  for (auto p : primes) out.push_back(Place{p});
  return out;
}

inline std::vector<PlaceCertificate> hilbert_certificates(const Rational& a, const Rational& b) {
  std::vector<PlaceCertificate> out;
  for (const auto& pl : relevant_places({a, b})) out.push_back({pl, hilbert_symbol(a, b, pl)});
  return out;
}

}  // namespace ratquiver
