#pragma once

/** @file
 * Seeded samplers: theta-weighted odd-order permutations, uniform subspaces of
 * F_2^n, and uniform odd partitions with a bounded number of ones.
 */

#include "nrz/analytic.hpp"
#include "nrz/bigint.hpp"
#include "nrz/signed_perm.hpp"
#include "nrz/subspace2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrz {

/// Deterministic 64-bit stream keyed by (seed, index path). Substreams are
/// derived from the key, never from the current state.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t index = 0) {
    key_ = {lo(seed), hi(seed), lo(index), hi(index)};
    reseed();
  }

  RandomStream substream(std::uint64_t index) const {
    RandomStream s(*this);
    s.key_.push_back(lo(index));
    s.key_.push_back(hi(index));
    s.reseed();
    return s;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return eng_(); }

  /// Uniform on [0, bound) by masked rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("below(0)");
    if (bound == 1) return 0;
    int bits = 64 - __builtin_clzll(bound - 1);
    std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    for (;;) {
      std::uint64_t x = eng_() & mask;
      if (x < bound) return x;
    }
  }

  BigInt below(const BigInt& bound) {
    if (bound <= 0) throw std::domain_error("below needs a positive bound");
    if (mpz_fits_ulong_p(bound.get_mpz_t())) return BigInt(static_cast<unsigned long>(below(bound.get_ui())));
    const std::size_t bits = mpz_sizeinbase(BigInt(bound - 1).get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    BigInt x;
    for (;;) {
      for (auto& w : buf) w = eng_();
      if (bits % 64) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
      mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
      if (x < bound) return x;
    }
  }

  /// Uniform on [0, 1) with 64 random bits.
  long double uniform01() { return std::ldexp(static_cast<long double>(eng_()), -64); }

 private:
  static std::uint32_t lo(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
  static std::uint32_t hi(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

  void reseed() {
    std::seed_seq seq(key_.begin(), key_.end());
    eng_.seed(seq);
  }

  std::vector<std::uint32_t> key_;
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Odd-order permutations under P_{n,theta}

/// Sequential sampler: the cycle through the smallest unplaced point among n'
/// remaining gets odd length k with probability theta alpha_{n'-k} / (n' alpha_{n'}).
/// Since n' alpha_{n'} = theta sum_{k odd} alpha_{n'-k}, the cumulative weights
/// are differences of same-parity prefix sums of alpha, so each step is a
/// binary search.
class OddPermSampler {
 public:
  OddPermSampler(int n, const Rational& theta, int exact_limit = kExactAlphaLimit) : n_(n), theta_(theta) {
    if (n < 0) throw std::domain_error("OddPermSampler needs n >= 0");
    theta_.canonicalize();
    require_theta(theta_);
    exact_ = n <= exact_limit;
    auto tab = alpha_table(theta_, std::max(n, 1));
    const auto N = static_cast<std::size_t>(n);
    if (exact_) {
      // c_j = alpha_j q^N N!, an integer for j <= N
      const BigInt q = theta_.get_den(), p = theta_.get_num();
      std::vector<BigInt> c(N + 1);
      BigInt fall = 1, qpow = 1;  // N!/j!, q^{N-j}
      for (std::size_t j = N + 1; j-- > 0;) {
        c[j] = tab->scaled(static_cast<int>(j)) * qpow * fall;
        fall *= static_cast<unsigned long>(j);
        qpow *= q;
      }
      prefix_.assign(N + 1, BigInt(0));
      for (std::size_t j = 0; j <= N; ++j) prefix_[j] = c[j] + (j >= 2 ? prefix_[j - 2] : BigInt(0));
      for (std::size_t m = 1; m <= N; ++m)
        if (p * prefix_[m - 1] != q * static_cast<unsigned long>(m) * c[m])
          throw std::logic_error("OddPermSampler: step probabilities do not sum to 1");
    } else {
      prefix_ld_.assign(N + 1, 0.0L);
      for (std::size_t j = 0; j <= N; ++j)
        prefix_ld_[j] = tab->alpha_ld(static_cast<int>(j)) + (j >= 2 ? prefix_ld_[j - 2] : 0.0L);
      const long double th = to_long_double(theta_);
      for (std::size_t m = 1; m <= N; ++m) {
        long double dev = std::fabs(th * prefix_ld_[m - 1] / (m * tab->alpha_ld(static_cast<int>(m))) - 1.0L);
        audit_ = std::max(audit_, dev);
      }
      if (audit_ >= 1e-12L) throw std::logic_error("OddPermSampler: floating normalization drifted");
    }
  }

  int n() const { return n_; }
  const Rational& theta() const { return theta_; }
  bool exact() const { return exact_; }
  /// Largest deviation of the floating step normalization from 1.
  long double audit() const { return audit_; }

  /// Exact probability of an odd length k for the cycle through the smallest of m remaining points.
  Rational step_probability(int m, int k) const {
    if (!exact_) throw std::logic_error("step_probability needs the exact table");
    if (m < 1 || m > n_ || k < 1 || k > m || k % 2 == 0) return 0;
    return make_rational(prefix_[static_cast<std::size_t>(m - k)] - (m - k >= 2 ? prefix_[static_cast<std::size_t>(m - k - 2)] : BigInt(0)),
                         prefix_[static_cast<std::size_t>(m - 1)]);
  }

  /// Cycle lengths in the order they are generated.
  std::vector<int> sample_lengths(RandomStream& rs) const {
    std::vector<int> out;
    int m = n_;
    while (m > 0) {
      int k = exact_ ? draw_exact(m, rs) : draw_ld(m, rs);
      out.push_back(k);
      m -= k;
    }
    return out;
  }

  CycleType sample(RandomStream& rs) const { return CycleType(sample_lengths(rs), n_); }

  /// A concrete permutation: the other points of each cycle are a uniform
  /// ordered draw from the unplaced points.
  SignedPermutation sample_permutation(RandomStream& rs) const {
    if (n_ == 0) throw std::domain_error("sample_permutation needs n >= 1");
    std::vector<int> image(static_cast<std::size_t>(n_));
    std::vector<int> free(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) free[static_cast<std::size_t>(i)] = i;
    for (int k : sample_lengths(rs)) {
      std::vector<int> cyc{free.front()};
      free.erase(free.begin());
      for (int i = 1; i < k; ++i) {
        auto j = static_cast<std::size_t>(rs.below(free.size()));
        cyc.push_back(free[j]);
        free.erase(free.begin() + static_cast<std::ptrdiff_t>(j));
      }
      for (std::size_t i = 0; i < cyc.size(); ++i) image[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
    }
    return SignedPermutation::permutation(image);
  }

 private:
  // cumulative weight of lengths 1, 3, ..., k among m points: prefix[m-1] - prefix[m-k-2]
  int draw_exact(int m, RandomStream& rs) const {
    const BigInt& total = prefix_[static_cast<std::size_t>(m - 1)];
    BigInt u = rs.below(total);
    // smallest odd k with total - prefix[m-k-2] > u, i.e. prefix[m-k-2] < total - u
    BigInt target = total - u;
    int lo = 0, hi = (m - 1) / 2;  // k = 2i + 1
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      int idx = m - (2 * mid + 1) - 2;
      const bool ok = idx < 0 || prefix_[static_cast<std::size_t>(idx)] < target;
      if (ok) hi = mid;
      else lo = mid + 1;
    }
    return 2 * lo + 1;
  }

  int draw_ld(int m, RandomStream& rs) const {
    const long double total = prefix_ld_[static_cast<std::size_t>(m - 1)];
    const long double target = total - rs.uniform01() * total;
    int lo = 0, hi = (m - 1) / 2;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      int idx = m - (2 * mid + 1) - 2;
      const bool ok = idx < 0 || prefix_ld_[static_cast<std::size_t>(idx)] < target;
      if (ok) hi = mid;
      else lo = mid + 1;
    }
    return 2 * lo + 1;
  }

  int n_;
  Rational theta_;
  bool exact_ = true;
  std::vector<BigInt> prefix_;
  std::vector<long double> prefix_ld_;
  long double audit_ = 0.0L;
};

/// Shared sampler per (n, theta).
inline std::shared_ptr<const OddPermSampler> odd_perm_sampler(int n, const Rational& theta) {
  static std::mutex mu;
  static std::map<std::pair<int, std::string>, std::shared_ptr<const OddPermSampler>> cache;
  Rational th = theta;
  th.canonicalize();
  auto key = std::make_pair(n, th.get_str());
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<const OddPermSampler>(n, th);
  return slot;
}

inline CycleType sample_odd_order_perm(int n, const Rational& theta, RandomStream& rs) {
  return odd_perm_sampler(n, theta)->sample(rs);
}

// ---------------------------------------------------------------------------
// Subspaces

/// Uniform rank-k subspace: uniform k x n matrices rejected until full rank.
inline Subspace2 sample_subspace(int n, int k, RandomStream& rs) {
  if (n < 0 || n > 64) throw std::domain_error("sample_subspace supports 0 <= n <= 64");
  if (k < 0 || k > n) throw std::domain_error("sample_subspace needs 0 <= k <= n");
  const Vec2 mask = n == 64 ? ~Vec2{0} : ((Vec2{1} << n) - 1);
  for (;;) {
    std::vector<Vec2> rows;
    for (int i = 0; i < k; ++i) rows.push_back(rs() & mask);
    Subspace2 h(n, rows);
    if (h.rank() == k) return h;
  }
}

/// Uniform over all subspaces: rank k with probability gaussian_binomial(n,k) / galois_number(n).
inline Subspace2 sample_subspace_any_rank(int n, RandomStream& rs) {
  if (n < 0 || n > 64) throw std::domain_error("sample_subspace_any_rank supports 0 <= n <= 64");
  BigInt u = rs.below(galois_number(n));
  int k = 0;
  for (; k < n; ++k) {
    BigInt g = gaussian_binomial(n, k);
    if (u < g) break;
    u -= g;
  }
  return sample_subspace(n, k, rs);
}

// ---------------------------------------------------------------------------
// Odd partitions with few ones

class EmptySupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Default cap on the number of ones: floor(sqrt(n) / ln n).
inline int default_t_max(int n) {
  if (n < 3) return 0;
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)) / std::log(static_cast<double>(n))));
}

/// Uniform partitions into odd parts >= 3 (Nijenhuis-Wilf). The pair (d, j) is
/// drawn with weight d p(M - jd); grouping by s = jd gives weight
/// sigma(s) p(M - s) with sigma(s) the sum of odd divisors >= 3 of s. s is
/// proposed with weight s p(M - s) (cumulative via two prefix sums) and
/// accepted with probability sigma(s) / (s h), h = max sigma(s)/s.
class OddPartitionSampler {
 public:
  explicit OddPartitionSampler(int max_n) : max_n_(max_n) {
    if (max_n < 0) throw std::domain_error("OddPartitionSampler needs max_n >= 0");
    tab_ = shared_q_tables(max_n);
    const auto N = static_cast<std::size_t>(max_n);
    p0_.assign(N + 1, BigInt(0));
    p1_.assign(N + 1, BigInt(0));
    for (std::size_t u = 0; u <= N; ++u) {
      p0_[u] = tab_->q_ge3[u] + (u ? p0_[u - 1] : BigInt(0));
      p1_[u] = tab_->q_ge3[u] * static_cast<unsigned long>(u) + (u ? p1_[u - 1] : BigInt(0));
    }
    sigma_.assign(N + 1, 0);
    for (std::size_t d = 3; d <= N; d += 2)
      for (std::size_t s = d; s <= N; s += d) sigma_[s] += d;
    h_num_ = 0;
    h_den_ = 1;
    for (std::size_t s = 1; s <= N; ++s)
      if (sigma_[s] * h_den_ > h_num_ * s) {
        h_num_ = sigma_[s];
        h_den_ = s;
      }
  }

  int max_n() const { return max_n_; }

  /// Parts of a uniform partition of m into odd parts >= 3, descending.
  std::vector<int> sample_ge3(int m, RandomStream& rs) const {
    if (m < 0 || m > max_n_) throw std::domain_error("sample_ge3: size out of range");
    if (sgn(tab_->q_ge3[static_cast<std::size_t>(m)]) == 0)
      throw EmptySupportError("no partition of " + std::to_string(m) + " into odd parts >= 3");
    std::vector<int> parts;
    long M = m;
    while (M > 0) {
      const long s = propose(M, rs);
      const std::uint64_t sig = sigma_[static_cast<std::size_t>(s)];
      if (sig == 0) continue;
      // accept with probability sig h_den / (s h_num)
      if (rs.below(static_cast<std::uint64_t>(s) * h_num_) >= sig * h_den_) continue;
      std::uint64_t u = rs.below(sig);
      long d = 3;
      for (;; d += 2) {
        if (s % d) continue;
        if (u < static_cast<std::uint64_t>(d)) break;
        u -= static_cast<std::uint64_t>(d);
      }
      for (long j = 0; j < s / d; ++j) parts.push_back(static_cast<int>(d));
      M -= s;
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
  }

 private:
  // W(s) = sum_{s' <= s} s' p(M - s') = M (P0[M-1] - P0[M-s-1]) - (P1[M-1] - P1[M-s-1])
  BigInt cumulative(long M, long s) const {
    auto P = [](const std::vector<BigInt>& v, long i) { return i < 0 ? BigInt(0) : v[static_cast<std::size_t>(i)]; };
    BigInt a = P(p0_, M - 1) - P(p0_, M - s - 1);
    BigInt b = P(p1_, M - 1) - P(p1_, M - s - 1);
    return a * static_cast<unsigned long>(M) - b;
  }

  long propose(long M, RandomStream& rs) const {
    BigInt u = rs.below(cumulative(M, M));
    long lo = 1, hi = M;
    while (lo < hi) {
      long mid = (lo + hi) / 2;
      if (cumulative(M, mid) > u) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  }

  int max_n_;
  std::shared_ptr<const PartitionTables> tab_;
  std::vector<BigInt> p0_, p1_;
  std::vector<std::uint64_t> sigma_;
  std::uint64_t h_num_ = 0, h_den_ = 1;
};

inline std::shared_ptr<const OddPartitionSampler> odd_partition_sampler(int max_n) {
  static std::mutex mu;
  static std::shared_ptr<const OddPartitionSampler> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache || cache->max_n() < max_n) cache = std::make_shared<const OddPartitionSampler>(max_n);
  return cache;
}

/// Uniform partition of n into odd parts with at most t_max ones, descending.
inline std::vector<int> sample_odd_partition_bounded_ones(int n, int t_max, RandomStream& rs) {
  if (n < 0 || t_max < 0) throw std::domain_error("sample_odd_partition_bounded_ones needs n, t_max >= 0");
  auto sp = odd_partition_sampler(n);
  auto tab = shared_q_tables(n);
  BigInt total = bounded_ones_count(n, t_max);
  if (sgn(total) == 0)
    throw EmptySupportError("no odd partition of " + std::to_string(n) + " with at most " +
                            std::to_string(t_max) + " ones");
  BigInt u = rs.below(total);
  int r = 0;
  for (;; ++r) {
    const BigInt& w = tab->q_ge3[static_cast<std::size_t>(n - r)];
    if (u < w) break;
    u -= w;
  }
  auto parts = sp->sample_ge3(n - r, rs);
  parts.insert(parts.end(), static_cast<std::size_t>(r), 1);
  return parts;
}

/// Number of primes in [a sqrt n, b sqrt n] occurring as parts.
inline int R_n(const std::vector<int>& parts, int n, double a, double b) {
  int c = 0;
  for (int p : primes_in_window(n, a, b))
    if (std::find(parts.begin(), parts.end(), p) != parts.end()) ++c;
  return c;
}

}  // namespace nrz
