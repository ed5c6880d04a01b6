#include "nrz/g_signature.hpp"
#include "nrz/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace nrz;

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_poly(1), (IntPoly{-1, 1}));
  EXPECT_EQ(cyclotomic_poly(3), (IntPoly{1, 1, 1}));
  EXPECT_EQ(cyclotomic_poly(12), (IntPoly{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, DegreeIsTotient) {
  for (int m = 1; m <= 512; ++m) {
    int phi = 0;
    for (int k = 1; k <= m; ++k) phi += std::gcd(k, m) == 1;
    ASSERT_EQ(static_cast<int>(cyclotomic_poly(m).size()) - 1, phi) << m;
  }
}

TEST(Cyclotomic, FieldInverse) {
  for (int m : {5, 9, 15, 21}) {
    CycloElement one(m, 1);
    for (int j = 1; j < m; ++j) {
      CycloElement x = one - CycloElement::zeta_power(m, j);
      if (x.is_rational() && sgn(x.rational_value()) == 0) continue;
      EXPECT_TRUE(((x * x.inverse()) - one).is_rational());
      EXPECT_EQ((x * x.inverse()).rational_value(), 1);
    }
  }
}

TEST(Defects, PointExamples) {
  EXPECT_EQ(defect_point(1, 1, 2), 0);
  EXPECT_EQ(defect_point(1, 2, 3), Rational(2, 3));
  // (1+z)^2/(1-z)^2 summed over the primitive cube roots is -2/3
  EXPECT_EQ(defect_point(1, 1, 3), Rational(-2, 3));
  EXPECT_NEAR(static_cast<double>(oracle::numeric_defect(1, 1, 3)), -2.0 / 3.0, 1e-12);
  EXPECT_THROW(defect_point(3, 1, 9), std::domain_error);
}

TEST(Defects, SurfaceExamples) {
  EXPECT_EQ(defect_surface(2, 1), 1);
  EXPECT_EQ(defect_surface(3, 0), 0);
  EXPECT_EQ(defect_surface(5, -2), -16);
}

TEST(Defects, SymmetryAndFieldPathAgree) {
  for (int m = 3; m <= 21; m += 2)
    for (long a = 1; a < m; ++a) {
      if (std::gcd(a, static_cast<long>(m)) != 1) continue;
      for (long b = 1; b < m; ++b) {
        if (std::gcd(b, static_cast<long>(m)) != 1) continue;
        Rational d = defect_point(a, b, m);
        EXPECT_EQ(d, defect_point(b, a, m));
        EXPECT_EQ(d, defect_point(-a, -b, m));
        if (m <= 11) EXPECT_EQ(d, defect_point_field({a, b, m}));
      }
    }
}

TEST(Defects, NumericAgreement) {
  for (int m : {2, 3, 5, 7, 15, 45, 127, 512}) {
    for (long a = 1; a < m; a += std::max(1, m / 9)) {
      if (std::gcd(a, static_cast<long>(m)) != 1) continue;
      long b = m - 1;
      long double exact = to_long_double(defect_point(a, b, m));
      EXPECT_LT(std::fabs(static_cast<double>(defect_point_numeric({a, b, m}) - exact)), 1e-9);
      EXPECT_LT(std::fabs(static_cast<double>(oracle::numeric_defect(a, b, m) - exact)), 1e-9);
    }
  }
  EXPECT_NEAR(static_cast<double>(defect_point_numeric({2, 3, 5})), to_double(defect_point(2, 3, 5)), 1e-9);
}

TEST(GSignature, Examples) {
  auto r = verify_gsignature_cp2(1, 2, 3);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.lhs, 2);
  for (const auto& d : r.defects) EXPECT_EQ(d, Rational(2, 3));
  EXPECT_TRUE(verify_gsignature_cp2(1, 2, 5).holds);
  EXPECT_EQ(verify_gsignature_cp2(1, 2, 5).lhs, 4);
  EXPECT_TRUE(verify_gsignature_cp2(1, 3, 7).holds);
  EXPECT_EQ(verify_gsignature_cp2(1, 3, 7).lhs, 6);
  EXPECT_THROW(verify_gsignature_cp2(1, 1, 5), std::domain_error);
  EXPECT_THROW(verify_gsignature_cp2(1, 2, 4), std::domain_error);
}

TEST(GSignature, ExhaustiveSmallModuli) {
  for (int m = 3; m <= 25; m += 2)
    for (long a = 1; a < m; ++a)
      for (long b = 1; b < m; ++b) {
        if (std::gcd(a, static_cast<long>(m)) != 1 || std::gcd(b, static_cast<long>(m)) != 1 ||
            std::gcd(mod_pos(a - b, m), static_cast<long>(m)) != 1)
          continue;
        ASSERT_TRUE(verify_gsignature_cp2(a, b, m).holds) << a << "," << b << "," << m;
      }
}

TEST(GSignature, RotationCanonicalForm) {
  auto c = RotationNumbers{4, 1, 5}.canonical();
  EXPECT_EQ(c.a, 1);
  EXPECT_EQ(c.b, 4);
  EXPECT_EQ((RotationNumbers{-1, -4, 5}.canonical().a), 1);
}
