#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nrz {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt pow2(unsigned long k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// (n)_k = n (n-1) ... (n-k+1)
inline BigInt falling(unsigned long n, unsigned long k) {
  BigInt r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= (n - i);
  return r;
}

/// 2-adic valuation of a positive integer.
inline unsigned v2(std::uint64_t k) {
  if (k == 0) throw std::domain_error("v2(0) is undefined");
  unsigned v = 0;
  while ((k & 1u) == 0) {
    k >>= 1;
    ++v;
  }
  return v;
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Natural log of a positive big integer without overflowing a double.
inline long double log_big(const BigInt& x) {
  if (sgn(x) <= 0) throw std::domain_error("log of non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(static_cast<long double>(mant)) +
         static_cast<long double>(exp) * std::log(2.0L);
}

inline long double to_long_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0L;
  long double lg = log_big(abs(q.get_num())) - log_big(q.get_den());
  long double v = std::exp(lg);
  return sgn(q) < 0 ? -v : v;
}

inline double to_double(const Rational& q) { return static_cast<double>(to_long_double(q)); }

/// Parse "p/q" or "p" into a canonical rational.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace nrz
