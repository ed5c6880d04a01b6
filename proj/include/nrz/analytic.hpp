#pragma once

/** @file
 * Exact generating-function and partition computations for odd-order
 * permutations under the theta-weighted law, plus subgroup counting bounds.
 *
 * alpha_n = [x^n] ((1+x)/(1-x))^{theta/2} satisfies
 * (n+1) alpha_{n+1} = theta alpha_n + (n-1) alpha_{n-1}. With theta = p/q the
 * scaled values b_n = q^n n! alpha_n are integers obeying
 * b_{n+1} = p b_n + q^2 n (n-1) b_{n-1}.
 */

#include "nrz/bigint.hpp"
#include "nrz/ht_odd.hpp"
#include "nrz/subspace2.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nrz {

inline constexpr int kExactAlphaLimit = 5000;

inline void require_theta(const Rational& theta) {
  if (theta <= 0 || theta > 1) throw std::domain_error("theta must lie in (0, 1]");
}

inline bool is_standard_theta(const Rational& theta) { return theta == 1 || theta == Rational(1, 2); }

class AlphaTable {
 public:
  AlphaTable(Rational theta, int max_n, int exact_limit = kExactAlphaLimit) : theta_(std::move(theta)) {
    theta_.canonicalize();
    require_theta(theta_);
    if (max_n < 0) throw std::domain_error("AlphaTable needs max_n >= 0");
    max_n_ = max_n;
    exact_n_ = std::min(max_n, exact_limit);
    const BigInt p = theta_.get_num(), q = theta_.get_den(), q2 = q * q;
    b_.reserve(static_cast<std::size_t>(exact_n_) + 1);
    b_.push_back(1);
    if (exact_n_ >= 1) b_.push_back(p);
    for (int n = 1; n < exact_n_; ++n) {
      BigInt nn = n;
      b_.push_back(p * b_[static_cast<std::size_t>(n)] + q2 * nn * (nn - 1) * b_[static_cast<std::size_t>(n - 1)]);
    }
    const long double th = to_long_double(theta_);
    ld_.reserve(static_cast<std::size_t>(max_n_) + 1);
    ld_.push_back(1.0L);
    if (max_n_ >= 1) ld_.push_back(th);
    for (int n = 1; n < max_n_; ++n)
      ld_.push_back((th * ld_[static_cast<std::size_t>(n)] + (n - 1) * ld_[static_cast<std::size_t>(n - 1)]) / (n + 1));
    for (int n = 0; n <= exact_n_; ++n) {
      long double ex = to_long_double(alpha(n));
      long double dev = std::fabs(ld_[static_cast<std::size_t>(n)] / ex - 1.0L);
      drift_ = std::max(drift_, dev);
    }
  }

  const Rational& theta() const { return theta_; }
  int max_n() const { return max_n_; }
  int exact_max_n() const { return exact_n_; }

  /// q^n n! alpha_n, an integer.
  const BigInt& scaled(int n) const {
    check_exact(n);
    return b_[static_cast<std::size_t>(n)];
  }

  Rational alpha(int n) const {
    check_exact(n);
    BigInt den = factorial(static_cast<unsigned long>(n));
    BigInt qn;
    mpz_pow_ui(qn.get_mpz_t(), theta_.get_den().get_mpz_t(), static_cast<unsigned long>(n));
    return make_rational(b_[static_cast<std::size_t>(n)], den * qn);
  }

  /// a_n = n! alpha_n = sum over odd-order sigma in S_n of theta^{c(sigma)}.
  Rational a(int n) const {
    check_exact(n);
    BigInt qn;
    mpz_pow_ui(qn.get_mpz_t(), theta_.get_den().get_mpz_t(), static_cast<unsigned long>(n));
    return make_rational(b_[static_cast<std::size_t>(n)], qn);
  }

  long double alpha_ld(int n) const {
    if (n < 0 || n > max_n_) throw std::out_of_range("alpha index out of range");
    return ld_[static_cast<std::size_t>(n)];
  }

  /// A_{n,s} = alpha_{n-s} / alpha_n.
  Rational A(int n, int s) const {
    if (s < 0 || s > n) throw std::domain_error("A(n,s) needs 0 <= s <= n");
    check_exact(n);
    BigInt qs;
    mpz_pow_ui(qs.get_mpz_t(), theta_.get_den().get_mpz_t(), static_cast<unsigned long>(s));
    return make_rational(falling(static_cast<unsigned long>(n), static_cast<unsigned long>(s)) *
                             b_[static_cast<std::size_t>(n - s)] * qs,
                         b_[static_cast<std::size_t>(n)]);
  }

  long double A_ld(int n, int s) const {
    if (s < 0 || s > n) throw std::domain_error("A(n,s) needs 0 <= s <= n");
    return alpha_ld(n - s) / alpha_ld(n);
  }

  /// Largest relative gap between the floating and exact tables.
  long double drift() const { return drift_; }

 private:
  void check_exact(int n) const {
    if (n < 0 || n > exact_n_) throw std::out_of_range("exact alpha index out of range");
  }

  Rational theta_;
  int max_n_ = 0;
  int exact_n_ = 0;
  std::vector<BigInt> b_;
  std::vector<long double> ld_;
  long double drift_ = 0.0L;
};

/// Shared table for theta covering at least max_n; rebuilt when a larger range is requested.
inline std::shared_ptr<const AlphaTable> alpha_table(const Rational& theta, int max_n) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const AlphaTable>> cache;
  Rational th = theta;
  th.canonicalize();
  const std::string key = th.get_str();
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot || slot->max_n() < max_n) slot = std::make_shared<const AlphaTable>(th, std::max(max_n, 64));
  return slot;
}

/// Scaled integer q^n a_n (n! a_n for theta = 1, 2^n a_n for theta = 1/2).
inline BigInt a_n_scaled(const Rational& theta, int n) { return alpha_table(theta, n)->scaled(n); }

inline Rational A(int n, int s, const Rational& theta) { return alpha_table(theta, n)->A(n, s); }

inline long double A_ld(int n, int s, const Rational& theta) { return alpha_table(theta, n)->A_ld(n, s); }

/// P(C_p = 0) by inclusion-exclusion, exact.
inline Rational prob_no_p_cycle(int n, int p, const Rational& theta) {
  if (p < 1 || p % 2 == 0) throw std::domain_error("prob_no_p_cycle needs an odd cycle length");
  auto tab = alpha_table(theta, n);
  Rational sum = 0, coef = 1;  // theta^j / (p^j j!)
  for (int j = 0; static_cast<long>(j) * p <= n; ++j) {
    if (j > 0) coef = coef * theta / Rational(static_cast<long>(p) * j);
    Rational term = coef * tab->A(n, j * p);
    if (j % 2) sum -= term;
    else sum += term;
  }
  return sum;
}

inline long double prob_no_p_cycle_ld(int n, int p, const Rational& theta) {
  if (p < 1 || p % 2 == 0) throw std::domain_error("prob_no_p_cycle needs an odd cycle length");
  auto tab = alpha_table(theta, n);
  const long double th = to_long_double(theta);
  long double sum = 0, coef = 1;
  for (int j = 0; static_cast<long>(j) * p <= n; ++j) {
    if (j > 0) coef *= th / (static_cast<long double>(p) * j);
    if (coef == 0) break;
    long double term = coef * tab->A_ld(n, j * p);
    sum += (j % 2) ? -term : term;
  }
  return sum;
}

/// E[prod_i (C_{k_i})_{j_i}] for distinct odd k_i.
inline Rational factorial_moment(int n, const std::vector<std::pair<int, int>>& spec, const Rational& theta) {
  long s = 0;
  Rational coef = 1;
  for (const auto& [k, j] : spec) {
    if (k < 1 || k % 2 == 0) throw std::domain_error("factorial_moment needs odd cycle lengths");
    if (j < 0) throw std::domain_error("factorial_moment needs nonnegative exponents");
    s += static_cast<long>(k) * j;
    for (int i = 0; i < j; ++i) coef = coef * theta / Rational(k);
  }
  if (s > n) return 0;
  return coef * A(n, static_cast<int>(s), theta);
}

inline std::vector<int> odd_primes_up_to(double x) {
  std::vector<int> out;
  for (int p = 3; p <= x; p += 2)
    if (is_odd_prime(p)) out.push_back(p);
  return out;
}

struct ExpectedPn {
  int n = 0;
  Rational theta;
  std::vector<int> primes;
  bool exact = false;
  Rational exact_value;  // set when exact
  long double value = 0;
  long double asymptote = 0;  // theta * ln ln ln n, when defined

  json to_json() const {
    json j = {{"n", n},
              {"theta", theta.get_str()},
              {"primes", primes.size()},
              {"exact", exact},
              {"value", static_cast<double>(value)},
              {"asymptote", static_cast<double>(asymptote)}};
    if (exact) j["exact_value"] = exact_value.get_str();
    return j;
  }
};

/// E[P_n] = sum over odd primes p <= (log n)^2 of P(C_p > 0); exact up to the exact table limit.
inline ExpectedPn expected_P_n(int n, const Rational& theta, double log_base = kNaturalLogBase) {
  ExpectedPn r;
  r.n = n;
  r.theta = theta;
  r.primes = odd_primes_up_to(prime_threshold(n, log_base));
  r.exact = n <= kExactAlphaLimit;
  if (r.exact) {
    r.exact_value = 0;
    for (int p : r.primes) r.exact_value += 1 - prob_no_p_cycle(n, p, theta);
    r.value = to_long_double(r.exact_value);
  } else {
    for (int p : r.primes) r.value += 1.0L - prob_no_p_cycle_ld(n, p, theta);
  }
  long double l3 = n > 15 ? std::log(std::log(std::log(static_cast<long double>(n)))) : 0.0L;
  r.asymptote = to_long_double(theta) * l3;
  return r;
}

// ---------------------------------------------------------------------------
// Partitions

struct PartitionTables {
  std::vector<BigInt> q_odd;  // partitions into odd parts
  std::vector<BigInt> q_ge3;  // partitions into odd parts >= 3

  int max_n() const { return static_cast<int>(q_odd.size()) - 1; }
};

inline PartitionTables q_tables(int max_n) {
  if (max_n < 0) throw std::domain_error("q_tables needs max_n >= 0");
  PartitionTables t;
  const auto N = static_cast<std::size_t>(max_n);
  t.q_odd.assign(N + 1, BigInt(0));
  t.q_odd[0] = 1;
  for (std::size_t k = 1; k <= N; k += 2)
    for (std::size_t v = k; v <= N; ++v) t.q_odd[v] += t.q_odd[v - k];
  t.q_ge3.resize(N + 1);
  for (std::size_t v = 0; v <= N; ++v) {
    t.q_ge3[v] = t.q_odd[v] - (v ? t.q_odd[v - 1] : BigInt(0));
    if (t.q_ge3[v] < 0) throw std::logic_error("q_ge3 went negative");
  }
  return t;
}

/// Shared tables, rebuilt when a larger range is requested.
inline std::shared_ptr<const PartitionTables> shared_q_tables(int max_n) {
  static std::mutex mu;
  static std::shared_ptr<const PartitionTables> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache || cache->max_n() < max_n) cache = std::make_shared<const PartitionTables>(q_tables(max_n));
  return cache;
}

/// Partitions into distinct parts, by an independent dynamic program.
inline std::vector<BigInt> q_distinct(int max_n) {
  const auto N = static_cast<std::size_t>(max_n);
  std::vector<BigInt> d(N + 1, BigInt(0));
  d[0] = 1;
  for (std::size_t k = 1; k <= N; ++k)
    for (std::size_t v = N; v >= k; --v) d[v] += d[v - k];
  return d;
}

inline const long double kPartitionA = 3.14159265358979323846264338327950288L / std::sqrt(3.0L);

inline long double log_ratio(const BigInt& num, const BigInt& den) { return log_big(num) - log_big(den); }

struct QRatioReport {
  int N = 0, s = 0;
  long double exact_ratio = 0;
  long double model = 0;  // exp(-A s / (2 sqrt N))
  long double rel_error = 0;

  json to_json() const {
    return {{"N", N}, {"s", s}, {"exact_ratio", static_cast<double>(exact_ratio)},
            {"model", static_cast<double>(model)}, {"rel_error", static_cast<double>(rel_error)}};
  }
};

inline QRatioReport q_ratio_check(int N, int s) {
  if (s < 0 || s > N) throw std::domain_error("q_ratio_check needs 0 <= s <= N");
  auto t = shared_q_tables(N);
  QRatioReport r;
  r.N = N;
  r.s = s;
  r.exact_ratio = std::exp(log_ratio(t->q_ge3[static_cast<std::size_t>(N - s)], t->q_ge3[static_cast<std::size_t>(N)]));
  r.model = std::exp(-kPartitionA * s / (2.0L * std::sqrt(static_cast<long double>(N))));
  r.rel_error = std::fabs(r.exact_ratio / r.model - 1.0L);
  return r;
}

/// Empirical K(N) = q_ge3(N) N^{5/4} e^{-A sqrt N}.
inline long double k_hat(int N) {
  auto t = shared_q_tables(N);
  long double l = log_big(t->q_ge3[static_cast<std::size_t>(N)]) + 1.25L * std::log(static_cast<long double>(N)) -
                  kPartitionA * std::sqrt(static_cast<long double>(N));
  return std::exp(l);
}

/// Number of odd partitions of n with at most t_max parts equal to 1.
inline BigInt bounded_ones_count(int n, int t_max) {
  auto t = shared_q_tables(n);
  BigInt c = 0;
  for (int r = 0; r <= std::min(n, t_max); ++r) c += t->q_ge3[static_cast<std::size_t>(n - r)];
  return c;
}

/// Primes p with a sqrt(n) <= p <= b sqrt(n).
inline std::vector<int> primes_in_window(int n, double a, double b) {
  std::vector<int> out;
  const double lo = a * std::sqrt(static_cast<double>(n)), hi = b * std::sqrt(static_cast<double>(n));
  for (int p = 2; p <= hi; ++p)
    if (p >= lo && (p == 2 || is_odd_prime(p))) out.push_back(p);
  return out;
}

/// sum_p q_ge3(n-p) / q_ge3(n) over the prime window.
inline long double expected_R_n_approx(int n, double a, double b) {
  auto t = shared_q_tables(n);
  long double s = 0;
  for (int p : primes_in_window(n, a, b))
    if (p <= n) s += std::exp(log_ratio(t->q_ge3[static_cast<std::size_t>(n - p)], t->q_ge3[static_cast<std::size_t>(n)]));
  return s;
}

/// Exact E[R_n] under the uniform law on odd partitions with at most t_max ones.
inline long double expected_R_n_exact(int n, int t_max, double a, double b) {
  const BigInt total = bounded_ones_count(n, t_max);
  long double s = 0;
  for (int p : primes_in_window(n, a, b))
    if (p <= n) s += std::exp(log_ratio(bounded_ones_count(n - p, t_max), total));
  return s;
}

// ---------------------------------------------------------------------------
// Subgroup counting bounds

struct CountingBounds {
  int n = 0;
  int k = 0;                      // floor(n/2)
  long long log2_two_subgroups_lower = 0;  // floor(k^2/4)
  long double log2_generated_upper = 0;    // (ceil log2 n + 5) log2 n!
  BigInt abelian_lower;                    // gaussian_binomial(n, floor(n/2))
  long double log2_abelian_lower = 0;
  long double log2_realizable_upper_exponent = 0;  // n^2/16, leading term only

  long double gap() const { return log2_generated_upper - static_cast<long double>(log2_two_subgroups_lower); }

  json to_json() const {
    return {{"n", n},
            {"k", k},
            {"log2_two_subgroups_lower", log2_two_subgroups_lower},
            {"log2_generated_upper", static_cast<double>(log2_generated_upper)},
            {"gap", static_cast<double>(gap())},
            {"abelian_lower", abelian_lower.get_str()},
            {"log2_abelian_lower", static_cast<double>(log2_abelian_lower)},
            {"log2_realizable_upper_exponent", static_cast<double>(log2_realizable_upper_exponent)}};
  }
};

inline long double log2_factorial(int n) { return std::lgamma(static_cast<long double>(n) + 1) / std::log(2.0L); }

inline int ceil_log2_int(long long n) {
  int c = 0;
  while ((1LL << c) < n) ++c;
  return c;
}

inline CountingBounds counting_bounds(int n) {
  if (n < 1) throw std::domain_error("counting_bounds needs n >= 1");
  CountingBounds c;
  c.n = n;
  c.k = n / 2;
  c.log2_two_subgroups_lower = static_cast<long long>(c.k) * c.k / 4;
  c.log2_generated_upper = (ceil_log2_int(n) + 5) * log2_factorial(n);
  c.abelian_lower = gaussian_binomial(n, n / 2);
  c.log2_abelian_lower = log_big(c.abelian_lower) / std::log(2.0L);
  c.log2_realizable_upper_exponent = static_cast<long double>(n) * n / 16.0L;
  return c;
}

/// Smallest n from which the generated-set upper bound stays below the
/// 2-subgroup lower bound for every n up to scan_to.
inline int counting_threshold(int scan_to = 20000) {
  int last_bad = 0;
  for (int n = 1; n <= scan_to; ++n) {
    const long double up = (ceil_log2_int(n) + 5) * log2_factorial(n);
    const long long k = n / 2;
    if (up >= static_cast<long double>(k * k / 4)) last_bad = n;
  }
  return last_bad + 1;
}

}  // namespace nrz
