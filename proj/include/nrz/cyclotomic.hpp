#pragma once

/** @file
 * Exact arithmetic in Q(zeta_m) = Q[x] / Phi_m(x).
 */

#include "nrz/bigint.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrz {

using IntPoly = std::vector<BigInt>;   // coefficients, lowest degree first
using RatPoly = std::vector<Rational>;

namespace detail {

template <class P>
void trim(P& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Quotient and remainder of a by b over Q.
inline void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lead = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    std::size_t shift = r.size() - b.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    trim(r);
  }
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace detail

/// Phi_m by dividing x^m - 1 by Phi_d for every proper divisor d of m.
inline IntPoly cyclotomic_poly(int m) {
  if (m < 1) throw std::domain_error("cyclotomic_poly needs m >= 1");
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  RatPoly num(static_cast<std::size_t>(m) + 1, Rational(0));
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d) continue;
    IntPoly pd = cyclotomic_poly(d);
    RatPoly den(pd.begin(), pd.end());
    RatPoly q, r;
    detail::divmod(num, den, q, r);
    if (!r.empty()) throw std::logic_error("cyclotomic_poly: inexact division");
    num = q;
  }
  IntPoly out;
  for (const auto& c : num) {
    if (c.get_den() != 1) throw std::logic_error("cyclotomic_poly: non-integral coefficient");
    out.push_back(c.get_num());
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, out);
  return out;
}

inline std::string poly_to_string(const IntPoly& p) {
  std::string s;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    const BigInt& c = p[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    BigInt a = abs(c);
    if (s.empty()) s += sgn(c) < 0 ? "-" : "";
    else s += sgn(c) < 0 ? " - " : " + ";
    if (i == 0 || a != 1) s += a.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

/// A residue in Q[x] / Phi_m, stored with exactly deg(Phi_m) coefficients.
class CycloElement {
 public:
  CycloElement() = default;
  explicit CycloElement(int m, const Rational& c = 0) : m_(m) {
    mod_ = modulus(m);
    coeffs_.assign(static_cast<std::size_t>(deg()), Rational(0));
    coeffs_[0] = c;
  }

  /// zeta_m^k
  static CycloElement zeta_power(int m, long long k) {
    CycloElement z(m);
    long long e = ((k % m) + m) % m;
    RatPoly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p[static_cast<std::size_t>(e)] = 1;
    z.assign(p);
    return z;
  }

  int m() const { return m_; }
  int deg() const { return static_cast<int>(mod_.size()) - 1; }
  const RatPoly& coeffs() const { return coeffs_; }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (sgn(coeffs_[i]) != 0) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (sgn(c) != 0) return false;
    return true;
  }
  Rational rational_value() const {
    if (!is_rational()) throw std::logic_error("cyclotomic element is not rational");
    return coeffs_[0];
  }

  CycloElement operator+(const CycloElement& o) const {
    check(o);
    CycloElement r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
  }
  CycloElement operator-(const CycloElement& o) const {
    check(o);
    CycloElement r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
  }
  CycloElement operator*(const CycloElement& o) const {
    check(o);
    CycloElement r(m_);
    r.assign(detail::mul(coeffs_, o.coeffs_));
    return r;
  }
  CycloElement& operator+=(const CycloElement& o) { return *this = *this + o; }

  /// Inverse via the extended Euclidean algorithm against Phi_m.
  CycloElement inverse() const {
    RatPoly a = coeffs_;
    detail::trim(a);
    if (a.empty()) throw std::domain_error("inverse of zero in Q(zeta_m)");
    RatPoly r0 = mod_, r1 = a;
    RatPoly s0, s1{Rational(1)};  // coefficients of a
    while (!r1.empty()) {
      RatPoly q, r;
      detail::divmod(r0, r1, q, r);
      RatPoly s2 = detail::sub(s0, detail::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.size() != 1) throw std::logic_error("element not invertible modulo Phi_m");
    Rational g = r0[0];
    for (auto& c : s0) c /= g;
    CycloElement out(m_);
    out.assign(s0);
    return out;
  }

  bool operator==(const CycloElement& o) const { return m_ == o.m_ && coeffs_ == o.coeffs_; }

 private:
  static RatPoly modulus(int m) {
    IntPoly p = cyclotomic_poly(m);
    return RatPoly(p.begin(), p.end());
  }

  void check(const CycloElement& o) const {
    if (m_ != o.m_) throw std::invalid_argument("mixing different cyclotomic fields");
  }

  // reduce an arbitrary polynomial modulo the monic Phi_m
  void assign(RatPoly p) {
    detail::trim(p);
    const int d = deg();
    for (int i = static_cast<int>(p.size()) - 1; i >= d; --i) {
      Rational c = p[static_cast<std::size_t>(i)];
      if (sgn(c) == 0) continue;
      for (int j = 0; j <= d; ++j) p[static_cast<std::size_t>(i - d + j)] -= c * mod_[static_cast<std::size_t>(j)];
    }
    p.resize(static_cast<std::size_t>(d), Rational(0));
    coeffs_ = std::move(p);
  }

  int m_ = 1;
  RatPoly mod_;
  RatPoly coeffs_;
};

}  // namespace nrz
