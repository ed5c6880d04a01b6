#include "nrz/oracle.hpp"
#include "nrz/signed_perm.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nrz;

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

SignedPermutation random_signed(int n, std::mt19937_64& rng) {
  std::vector<int> im(static_cast<std::size_t>(n)), sg(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  std::shuffle(im.begin(), im.end(), rng);
  for (auto& s : sg) s = (rng() & 1) ? -1 : 1;
  return SignedPermutation(im, sg);
}

// (1 2) with both signs +
SignedPermutation swap12() { return SignedPermutation::transposition(2, 0, 1); }

}  // namespace

TEST(SignedPerm, ComposeIdentity) {
  auto id = SignedPermutation::identity(3);
  EXPECT_EQ(compose(id, id), id);
  EXPECT_EQ(compose(swap12(), swap12()), SignedPermutation::identity(2));
}

TEST(SignedPerm, QuarterTurnSquaresToMinusIdentity) {
  // e1 -> e2, e2 -> -e1
  SignedPermutation r({1, 0}, {1, -1});
  EXPECT_EQ(compose(r, r), SignedPermutation::diagonal({-1, -1}));
  EXPECT_EQ(order(r), 4);
}

TEST(SignedPerm, ComposeMatchesMatrixProduct) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      auto f = random_signed(n, rng), g = random_signed(n, rng);
      EXPECT_EQ(compose(f, g).matrix(), matmul(f.matrix(), g.matrix()));
    }
}

TEST(SignedPerm, ComposeSizeMismatchThrows) {
  EXPECT_THROW(compose(SignedPermutation::identity(2), SignedPermutation::identity(3)), std::invalid_argument);
}

TEST(SignedPerm, OrderExamples) {
  EXPECT_EQ(order(SignedPermutation::diagonal({-1, 1})), 2);
  EXPECT_EQ(order(SignedPermutation::permutation({1, 2, 0})), 3);
  SignedPermutation twisted({1, 2, 0}, {1, 1, -1});
  EXPECT_EQ(order(twisted), 6);
  EXPECT_FALSE(is_odd_order(twisted));
  EXPECT_TRUE(is_odd_order(SignedPermutation::permutation({1, 2, 0})));
  EXPECT_FALSE(is_odd_order(SignedPermutation::transposition(4, 1, 3)));
}

TEST(SignedPerm, OrderByMatrixPowers) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = random_signed(1 + static_cast<int>(rng() % 7), rng);
    auto id = SignedPermutation::identity(f.n());
    auto p = f;
    long k = 1;
    while (!(p == id)) {
      p = compose(f, p);
      ++k;
    }
    EXPECT_EQ(order(f), k);
  }
}

TEST(SignedPerm, SignedCycleTypeExamples) {
  auto t = signed_cycle_type(SignedPermutation::diagonal({-1, -1, 1}));
  std::vector<std::pair<int, int>> want{{1, 0}, {1, 1}, {1, 1}};
  EXPECT_EQ(t.cycles, want);
  auto c = signed_cycle_type(SignedPermutation({1, 2, 0}, {1, -1, 1}));
  EXPECT_EQ(c.cycles, (std::vector<std::pair<int, int>>{{3, 1}}));
  auto id5 = signed_cycle_type(SignedPermutation::identity(5));
  EXPECT_EQ(id5.cycles, (std::vector<std::pair<int, int>>(5, {1, 0})));
  EXPECT_EQ(project(SignedPermutation({1, 0}, {-1, 1})), swap12());
}

TEST(SignedPerm, ConjugacyInvariance) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n) {
    auto f = random_signed(n, rng);
    for (int i = 0; i < 100; ++i) {
      auto h = random_signed(n, rng);
      EXPECT_EQ(signed_cycle_type(conjugate(h, f)), signed_cycle_type(f));
    }
  }
}

TEST(SignedPerm, ConjugacyClassesMatchSignedCycleTypes) {
  // orbit under conjugation equals the set with the same signed cycle type, n <= 4
  for (int n = 1; n <= 4; ++n) {
    std::vector<SignedPermutation> all;
    oracle::for_each_signed_perm(n, [&](const std::vector<int>& im, const std::vector<int>& sg) {
      all.emplace_back(im, sg);
    });
    const auto& f = all[all.size() / 3];
    std::set<SignedPermutation> orbit;
    for (const auto& h : all) orbit.insert(conjugate(h, f));
    std::set<SignedPermutation> same;
    for (const auto& g : all)
      if (signed_cycle_type(g) == signed_cycle_type(f)) same.insert(g);
    EXPECT_EQ(orbit, same) << "n=" << n;
  }
}

TEST(SignedPerm, OddOrderIffOrderOdd) {
  for (int n = 1; n <= 4; ++n) {
    BigInt group = pow2(static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n));
    oracle::for_each_signed_perm(n, [&](const std::vector<int>& im, const std::vector<int>& sg) {
      SignedPermutation f(im, sg);
      BigInt o = order(f);
      EXPECT_EQ(is_odd_order(f), mpz_odd_p(o.get_mpz_t()) != 0);
      EXPECT_TRUE(mpz_divisible_p(group.get_mpz_t(), o.get_mpz_t()));
    });
  }
}

TEST(SignedPerm, OddOrderLifts) {
  EXPECT_EQ(count_odd_order_lifts(CycleType({}, 3)), 1);
  EXPECT_EQ(count_odd_order_lifts(CycleType({3}, 3)), 4);
  EXPECT_EQ(count_odd_order_lifts(CycleType({3, 5}, 8)), 64);
  EXPECT_THROW(count_odd_order_lifts(CycleType({2}, 3)), std::domain_error);
}

TEST(SignedPerm, LiftCountsSumToOracle) {
  for (int n = 1; n <= 6; ++n) {
    BigInt sum = 0;
    for (const auto& [shape, size] : oracle::enum_odd_order_by_classes(n).by_shape)
      sum += BigInt(static_cast<unsigned long>(size)) * count_odd_order_lifts(CycleType(shape, n));
    EXPECT_EQ(sum, static_cast<unsigned long>(oracle::enum_signed_odd_order(n))) << "n=" << n;
  }
}

TEST(SignedPerm, CycleTypeCounts) {
  CycleType ct({3, 5}, 10);
  EXPECT_EQ(ct.count(1), 2);
  EXPECT_EQ(ct.count(3), 1);
  EXPECT_EQ(ct.num_cycles(), 4);
  EXPECT_EQ(parse_cycle_type("3, 5,7").to_string(), "3,5,7");
  EXPECT_THROW(parse_cycle_type("3,x"), std::invalid_argument);
  EXPECT_THROW(CycleType({4}, 3), std::invalid_argument);
}

TEST(SignedPerm, TextRoundTrip) {
  SignedPermutation f({2, 0, 1}, {1, -1, 1});
  EXPECT_EQ(f.to_text(), "3; 3,1,2; +,-,+");
  EXPECT_EQ(parse_signed_perm(f.to_text()), f);
  EXPECT_THROW(parse_signed_perm("3; 1,1,2; +,+,+"), std::invalid_argument);
  EXPECT_THROW(parse_signed_perm("2; 1,2"), std::invalid_argument);
}
