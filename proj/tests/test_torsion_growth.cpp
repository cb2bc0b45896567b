#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "otarith/errors.hpp"
#include "otarith/torsion_growth.hpp"

using namespace otarith;
using otarith::testing::cubic;
using otarith::testing::quartic;
using otarith::testing::quartic_units;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}
}  // namespace

TEST(TorsionOrder, Examples) {
  auto k2 = cubic(2);
  EXPECT_EQ(torsion_order(k2->theta(), 1), 2);
  EXPECT_EQ(torsion_order(k2->theta(), 2), 8);
  EXPECT_EQ(torsion_order(cubic(1)->theta(), 1), 1);
}

TEST(TorsionOrder, Errors) {
  auto k = cubic(2);
  EXPECT_EQ(code_of([&] { torsion_order(k->one(), 3); }), ErrorCode::TorsionUnit);
  EXPECT_EQ(code_of([&] { torsion_order(-k->one(), 2); }), ErrorCode::TorsionUnit);
  EXPECT_EQ(code_of([&] { torsion_order(k->theta() - k->one(), 2); }), ErrorCode::NotUnit);
}

TEST(Mahler, Examples) {
  Interval m1 = mahler_measure(ZPoly{Int(-2), Int(1)});
  EXPECT_TRUE(m1.contains(Rational(2)));
  EXPECT_LT(m1.width(), 1e-18);
  Interval m2 = mahler_measure(ZPoly{Int(1), Int(1), Int(1)});
  EXPECT_TRUE(m2.contains(Rational(1)));
  Interval m3 = mahler_measure(ZPoly{Int(-1), Int(1), Int(0), Int(1)});
  EXPECT_NEAR(m3.mid_double(), 1.4655712318767680, 1e-15);
  EXPECT_LT(m3.width(), 1e-18);
}

TEST(Mahler, LeadingCoefficientAndRepeatedRoots) {
  // 3 (x - 2)^2 (x^2 + 1)
  ZPoly f = ZPoly{Int(3)} * ZPoly{Int(-2), Int(1)} * ZPoly{Int(-2), Int(1)} * ZPoly{Int(1), Int(0), Int(1)};
  EXPECT_TRUE(mahler_measure(f).contains(Rational(12)));
}

TEST(Growth, LimitOnTheFamily) {
  for (int m : {1, 2}) {
    auto k = cubic(m);
    auto r = growth_report(k->theta(), 60);
    ASSERT_EQ(r.terms.size(), 60u);
    EXPECT_LT(r.limit_gap.hi_double(), 0.02) << m;
    EXPECT_TRUE(r.trend_certified) << m;
    EXPECT_TRUE(r.limit_gap.certainly_less(r.half_gap));
  }
}

TEST(Growth, MinimalHorizon) {
  auto r = growth_report(cubic(3)->theta(), 4);
  ASSERT_EQ(r.terms.size(), 4u);
  for (unsigned long n = 1; n <= 4; ++n) EXPECT_EQ(r.terms[n - 1].n, n);
  EXPECT_EQ(code_of([] { growth_report(cubic(3)->theta(), 3); }), ErrorCode::ShapeError);
}

TEST(Growth, LogTermsEncloseTheExactValue) {
  auto r = growth_report(cubic(5)->theta(), 12);
  for (const auto& t : r.terms) {
    double expected = std::log(t.torsion.get_d()) / static_cast<double>(t.n);
    EXPECT_LE(t.log_term.lo_double(), expected + 1e-12);
    EXPECT_GE(t.log_term.hi_double(), expected - 1e-12);
  }
}

TEST(Chain, Examples) {
  auto k2 = cubic(2);
  auto c = covering_chain(k2->theta(), 2, 3);
  ASSERT_EQ(c.size(), 4u);
  for (std::size_t i = 1; i + 1 < c.size(); ++i) EXPECT_LT(c[i].torsion, c[i + 1].torsion);
  for (const auto& level : c) EXPECT_TRUE(level.divides_next);
  EXPECT_EQ(covering_chain(k2->theta(), 2, 1).size(), 2u);
  auto c3 = covering_chain(cubic(1)->theta(), 3, 2);
  ASSERT_EQ(c3.size(), 3u);
  for (const auto& level : c3) EXPECT_TRUE(level.divides_next);
  EXPECT_EQ(c3[2].n, 9u);
}

TEST(Properties, ResultantIdentity) {
  for (int m = 1; m <= 10; ++m) {
    auto k = cubic(m);
    FieldElement u = rank1_fundamental_unit_search(k).units[0];
    for (unsigned long n = 1; n <= 64; ++n) EXPECT_EQ(torsion_order(u, n), torsion_order_resultant(u, n)) << m << " " << n;
  }
}

TEST(Properties, ResultantIdentityWithDegreeAdjustment) {
  // 3 + 2 sqrt 2 generates a quadratic subfield of Q(2^(1/4)).
  auto k = quartic();
  FieldElement u = otarith::testing::elem(k, {3, 0, 2, 0});
  for (unsigned long n = 1; n <= 64; ++n) EXPECT_EQ(torsion_order(u, n), torsion_order_resultant(u, n)) << n;
}

TEST(Properties, CyclotomicProduct) {
  for (int m = 1; m <= 10; ++m) {
    auto k = cubic(m);
    FieldElement u = k->theta();
    for (unsigned long n = 1; n <= 16; ++n) {
      Interval prod = cyclotomic_product(min_poly(u), n);
      EXPECT_TRUE(prod.contains(Rational(torsion_order(u, n)))) << m << " " << n;
      EXPECT_LT(prod.width(), 1e-10 * (1 + torsion_order(u, n).get_d()));
    }
  }
}

TEST(Properties, Divisibility) {
  for (int m : {1, 2, 3, 7}) {
    FieldElement u = cubic(m)->theta();
    for (unsigned long n = 1; n <= 8; ++n)
      for (unsigned long k = 1; k <= 6; ++k) EXPECT_EQ(torsion_order(u, n * k) % torsion_order(u, n), 0) << m << " " << n << " " << k;
  }
}

TEST(Properties, GapAtSixtyOnTheCorpus) {
  for (int m = 1; m <= 10; ++m) {
    auto r = growth_report(cubic(m)->theta(), 60);
    EXPECT_LT(r.limit_gap.hi_double(), 0.02) << m;
  }
}

TEST(Properties, KroneckerGuard) {
  for (int m = 1; m <= 10; ++m) EXPECT_TRUE(kronecker_guard(cubic(m)->theta()));
  auto k = quartic();
  for (const auto& u : quartic_units(k).units) EXPECT_TRUE(kronecker_guard(u));
}
