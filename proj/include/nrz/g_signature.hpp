#pragma once

/** @file
 * Signature defects of fixed points and fixed surfaces, and the G-signature
 * balance for linear Z/m actions on CP^2.
 */

#include "nrz/cyclotomic.hpp"
#include "nrz/verdict.hpp"

#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace nrz {

struct RotationNumbers {
  long a = 1;
  long b = 1;
  int m = 2;

  /// Least of (a,b), (b,a), (-a,-b), (-b,-a) reduced mod m.
  RotationNumbers canonical() const {
    auto md = [this](long x) { return ((x % m) + m) % m; };
    std::pair<long, long> best{md(a), md(b)};
    for (auto c : {std::pair{md(b), md(a)}, std::pair{md(-a), md(-b)}, std::pair{md(-b), md(-a)}})
      best = std::min(best, c);
    return {best.first, best.second, m};
  }
};

inline long mod_pos(long x, long m) { return ((x % m) + m) % m; }

namespace detail {

/// (1 + zeta^j) / (1 - zeta^j) for j = 0..m-1 (entry 0 unused).
inline const std::vector<CycloElement>& cot_table(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<CycloElement>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  std::vector<CycloElement> t(static_cast<std::size_t>(m), CycloElement(m));
  CycloElement one(m, 1);
  for (int j = 1; j < m; ++j) {
    CycloElement z = CycloElement::zeta_power(m, j);
    t[static_cast<std::size_t>(j)] = (one + z) * (one - z).inverse();
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(t)).first->second;
}

}  // namespace detail

namespace detail {

/// The cot table with each entry scaled to an integer polynomial over a common denominator.
struct ScaledTable {
  std::vector<IntPoly> num;
  std::vector<BigInt> scale;  // entry j equals num[j] / scale[j]
  BigInt common;              // lcm of all scales
};

inline const ScaledTable& scaled_cot_table(int m) {
  static std::mutex mu;
  static std::map<int, ScaledTable> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  const auto& t = cot_table(m);
  ScaledTable st;
  st.common = 1;
  for (const auto& e : t) {
    BigInt d = 1;
    for (const auto& c : e.coeffs()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den().get_mpz_t());
    IntPoly p;
    for (const auto& c : e.coeffs()) p.push_back(c.get_num() * (d / c.get_den()));
    st.num.push_back(std::move(p));
    st.scale.push_back(d);
    mpz_lcm(st.common.get_mpz_t(), st.common.get_mpz_t(), d.get_mpz_t());
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(st)).first->second;
}

inline void check_units(const RotationNumbers& rn) {
  if (rn.m < 2) throw std::domain_error("defect_point needs m >= 2");
  if (std::gcd(mod_pos(rn.a, rn.m), static_cast<long>(rn.m)) != 1 ||
      std::gcd(mod_pos(rn.b, rn.m), static_cast<long>(rn.m)) != 1)
    throw std::domain_error("defect_point needs rotation numbers prime to m");
}

}  // namespace detail

/// Sum over k = 1..m-1 of (1+z^{ka})(1+z^{kb}) / ((1-z^{ka})(1-z^{kb})), evaluated
/// in Q(zeta_m); the sum is Galois-stable and is returned as a rational.
inline Rational defect_point(const RotationNumbers& rn) {
  detail::check_units(rn);
  const int m = rn.m;
  const auto& st = detail::scaled_cot_table(m);
  const IntPoly phi = cyclotomic_poly(m);
  const std::size_t d = phi.size() - 1;
  const BigInt denom = st.common * st.common;
  IntPoly acc(2 * d, BigInt(0));
  BigInt w;
  for (long k = 1; k < m; ++k) {
    auto i = static_cast<std::size_t>(mod_pos(k * rn.a, m));
    auto j = static_cast<std::size_t>(mod_pos(k * rn.b, m));
    w = denom / (st.scale[i] * st.scale[j]);
    const auto& p = st.num[i];
    const auto& q = st.num[j];
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (sgn(p[x]) == 0) continue;
      BigInt px = p[x] * w;
      for (std::size_t y = 0; y < q.size(); ++y) acc[x + y] += px * q[y];
    }
  }
  // reduce modulo the monic Phi_m
  for (std::size_t i = acc.size(); i-- > d;) {
    if (sgn(acc[i]) == 0) continue;
    BigInt c = acc[i];
    for (std::size_t j = 0; j <= d; ++j) acc[i - d + j] -= c * phi[j];
  }
  for (std::size_t i = 1; i < d; ++i)
    if (sgn(acc[i]) != 0) throw std::logic_error("defect_point: sum is not rational");
  return make_rational(acc[0], denom);
}

/// Reference evaluation of the same sum with plain field operations.
inline Rational defect_point_field(const RotationNumbers& rn) {
  detail::check_units(rn);
  const int m = rn.m;
  CycloElement one(m, 1), sum(m);
  for (long k = 1; k < m; ++k) {
    CycloElement za = CycloElement::zeta_power(m, k * rn.a), zb = CycloElement::zeta_power(m, k * rn.b);
    sum += (one + za) * (one + zb) * ((one - za) * (one - zb)).inverse();
  }
  if (!sum.is_rational()) throw std::logic_error("defect_point_field: sum is not rational");
  return sum.rational_value();
}

inline Rational defect_point(long a, long b, int m) { return defect_point(RotationNumbers{a, b, m}); }

/// Same sum by complex floating-point arithmetic.
inline long double defect_point_numeric(const RotationNumbers& rn) {
  using C = std::complex<long double>;
  const long double tau = 2.0L * 3.14159265358979323846264338327950288L;
  C sum = 0;
  for (long k = 1; k < rn.m; ++k) {
    long double ta = tau * static_cast<long double>(mod_pos(k * rn.a, rn.m)) / rn.m;
    long double tb = tau * static_cast<long double>(mod_pos(k * rn.b, rn.m)) / rn.m;
    C za = std::polar(1.0L, ta), zb = std::polar(1.0L, tb);
    sum += (C(1) + za) * (C(1) + zb) / ((C(1) - za) * (C(1) - zb));
  }
  return sum.real();
}

/// (p^2 - 1)/3 times the self-intersection of a fixed surface.
inline Rational defect_surface(long p, long self_intersection) {
  Rational r(p * p - 1, 3);
  r.canonicalize();
  return r * self_intersection;
}

struct GSignatureReport {
  int m = 0;
  long a = 0, b = 0;
  Rational lhs;
  std::vector<RotationNumbers> points;
  std::vector<Rational> defects;
  bool holds = false;

  json to_json() const {
    json d = json::array(), pts = json::array();
    for (const auto& x : defects) d.push_back(x.get_str());
    for (const auto& p : points) pts.push_back({p.a, p.b});
    Rational s = 0;
    for (const auto& x : defects) s += x;
    return {{"m", m}, {"a", a}, {"b", b}, {"lhs", lhs.get_str()}, {"rotation_numbers", pts},
            {"defects", d}, {"defect_sum", s.get_str()}, {"holds", holds}};
  }
};

/// Balance m * sigma(M/G) - sigma(M) = sum of point defects for the linear action
/// on CP^2 with weights (a, b); sigma(M/G) = sigma(M) = 1.
inline GSignatureReport verify_gsignature_cp2(long a, long b, int m) {
  if (m < 3 || m % 2 == 0) throw std::domain_error("verify_gsignature_cp2 needs odd m >= 3");
  for (long x : {a, b, a - b})
    if (std::gcd(mod_pos(x, m), static_cast<long>(m)) != 1)
      throw std::domain_error("verify_gsignature_cp2 needs a, b, a-b prime to m");
  GSignatureReport rep;
  rep.m = m;
  rep.a = a;
  rep.b = b;
  rep.lhs = Rational(m) * 1 - 1;
  rep.points = {RotationNumbers{mod_pos(a, m), mod_pos(b, m), m},
                RotationNumbers{mod_pos(-a, m), mod_pos(b - a, m), m},
                RotationNumbers{mod_pos(-b, m), mod_pos(a - b, m), m}};
  Rational s = 0;
  for (const auto& p : rep.points) {
    rep.defects.push_back(defect_point(p));
    s += rep.defects.back();
  }
  rep.holds = (s == rep.lhs);
  return rep;
}

}  // namespace nrz
