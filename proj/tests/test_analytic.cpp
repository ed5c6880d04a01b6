#include "nrz/analytic.hpp"
#include "nrz/oracle.hpp"
#include "nrz/samplers.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace nrz;

namespace {

const Rational kOne(1), kHalf(1, 2);

Rational rpow(const Rational& x, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

// weighted sums over the odd-order census: sum theta^{c(sigma)} f(shape)
template <class F>
Rational census_sum(int n, const Rational& theta, F f) {
  Rational s = 0;
  for (const auto& [shape, cnt] : oracle::enum_odd_order_by_classes(n).by_shape)
    s += Rational(static_cast<unsigned long>(cnt)) * rpow(theta, shape.size()) * f(shape);
  return s;
}

}  // namespace

TEST(Alpha, SmallValues) {
  EXPECT_EQ(alpha_table(kOne, 10)->alpha(2), kHalf);
  EXPECT_EQ(alpha_table(kOne, 10)->a(4), 9);
  EXPECT_EQ(alpha_table(kHalf, 10)->a(3), Rational(9, 8));
  EXPECT_EQ(A(4, 2, kOne), Rational(4, 3));
  std::vector<long> want{1, 1, 1, 3, 9, 45};
  for (int n = 0; n < 6; ++n) EXPECT_EQ(alpha_table(kOne, 10)->a(n), want[static_cast<std::size_t>(n)]);
}

TEST(Alpha, IntegralForThetaOne) {
  auto t = alpha_table(kOne, 2000);
  for (int n = 0; n <= 2000; n += 7) EXPECT_EQ(t->a(n).get_den(), 1) << n;
}

TEST(Alpha, MatchesOracleCensus) {
  for (const auto& th : {kOne, kHalf})
    for (int n = 0; n <= oracle::kMaxOddOrderN; ++n)
      EXPECT_EQ(alpha_table(th, n)->a(n), census_sum(n, th, [](const oracle::Shape&) { return Rational(1); }))
          << n << " " << th.get_str();
}

TEST(Alpha, FloatingTableTracksExact) {
  for (const auto& th : {kOne, kHalf}) {
    auto t = alpha_table(th, 2000);
    EXPECT_LT(t->drift(), 1e-12L);
    for (int s : {1, 20, 44, 90}) {
      long double ex = to_long_double(t->A(2000, s));
      EXPECT_LT(std::fabs(t->A_ld(2000, s) / ex - 1.0L), 1e-12L);
    }
  }
}

TEST(CycleCounts, ProbNoPCycleMatchesOracle) {
  for (const auto& th : {kOne, kHalf})
    for (int n = 1; n <= oracle::kMaxOddOrderN; ++n)
      for (int p : {3, 5, 7}) {
        Rational num = census_sum(n, th, [p](const oracle::Shape& s) {
          return Rational(std::count(s.begin(), s.end(), p) == 0 ? 1 : 0);
        });
        Rational want = num / alpha_table(th, n)->a(n);
        EXPECT_EQ(prob_no_p_cycle(n, p, th), want) << n << " " << p;
        EXPECT_NEAR(static_cast<double>(prob_no_p_cycle_ld(n, p, th)), to_double(want), 1e-15);
      }
}

TEST(CycleCounts, FixedPointMomentMatchesOracle) {
  for (const auto& th : {kOne, kHalf})
    for (int n = 1; n <= oracle::kMaxOddOrderN; ++n) {
      Rational num = census_sum(n, th, [](const oracle::Shape& s) {
        return Rational(static_cast<long>(std::count(s.begin(), s.end(), 1)));
      });
      Rational want = num / alpha_table(th, n)->a(n);
      EXPECT_EQ(factorial_moment(n, {{1, 1}}, th), want);
      EXPECT_EQ(factorial_moment(n, {{1, 1}}, th), th * A(n, 1, th));
    }
  EXPECT_THROW(factorial_moment(5, {{2, 1}}, kOne), std::domain_error);
}

TEST(CycleCounts, ExpectedPrimeCycles) {
  auto small = expected_P_n(2000, kOne);
  auto big = expected_P_n(100000, kOne);
  EXPECT_TRUE(small.exact);
  EXPECT_FALSE(big.exact);
  EXPECT_GT(big.value, 1.0L);
  EXPECT_GT(big.value, small.value);
  EXPECT_GT(big.asymptote, 0.0L);
  auto half = expected_P_n(2000, kHalf);
  EXPECT_LT(half.value, small.value);
}

TEST(Partitions, Tables) {
  auto t = q_tables(200);
  EXPECT_EQ(t.q_odd[5], 3);
  EXPECT_EQ(t.q_ge3[9], 2);
  EXPECT_EQ(t.q_ge3[1], 0);
  auto d = q_distinct(200);
  for (int n = 0; n <= 200; ++n) ASSERT_EQ(t.q_odd[static_cast<std::size_t>(n)], d[static_cast<std::size_t>(n)]) << n;
  for (int n = 0; n <= oracle::kMaxPartitionN; n += 5) {
    EXPECT_EQ(t.q_odd[static_cast<std::size_t>(n)], oracle::enum_partitions(n, oracle::odd_part).size());
    EXPECT_EQ(t.q_ge3[static_cast<std::size_t>(n)], oracle::enum_partitions(n, oracle::odd_part_ge3).size());
  }
}

TEST(Partitions, RatioModel) {
  auto r = q_ratio_check(10000, 50);
  EXPECT_LT(r.rel_error, 0.05L);
  EXPECT_GT(k_hat(10000), 0.0L);
  EXPECT_NEAR(static_cast<double>(k_hat(10000) / k_hat(8000)), 1.0, 0.05);
}

TEST(Partitions, BoundedOnes) {
  EXPECT_EQ(bounded_ones_count(9, 0), 2);
  std::size_t want = 0;
  for (const auto& p : oracle::enum_partitions(9, oracle::odd_part))
    if (std::count(p.begin(), p.end(), 1) <= 2) ++want;
  EXPECT_EQ(bounded_ones_count(9, 2), want);
  EXPECT_EQ(primes_in_window(100, 0.5, 2.0), (std::vector<int>{5, 7, 11, 13, 17, 19}));
  long double ex = expected_R_n_exact(10000, default_t_max(10000), 0.5, 1.0);
  EXPECT_NEAR(static_cast<double>(expected_R_n_approx(10000, 0.5, 1.0)), static_cast<double>(ex), 0.05);
}

TEST(Counting, Bounds) {
  auto c = counting_bounds(16);
  EXPECT_EQ(c.k, 8);
  EXPECT_EQ(c.log2_two_subgroups_lower, 16);
  EXPECT_EQ(c.abelian_lower, gaussian_binomial(16, 8));
  EXPECT_GT(c.gap(), 0.0L);
  EXPECT_EQ(counting_threshold(), 2712);
  EXPECT_LT(counting_bounds(2712).gap(), 0.0L);
  EXPECT_GE(counting_bounds(2711).gap(), 0.0L);
}
