#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "otarith/errors.hpp"
#include "otarith/ideal.hpp"
#include "otarith/residue.hpp"

using namespace otarith;
using otarith::testing::cubic;
using otarith::testing::elem;
using otarith::testing::quartic;
using otarith::testing::random_element;

namespace {

IntegerIdeal p1(const FieldPtr& k) { return principal_ideal(k->theta() - k->one()); }

IntegerIdeal from(const FieldPtr& k, std::initializer_list<FieldElement> gens) {
  std::vector<FieldElement> g(gens);
  return ideal_from_generators(k, g);
}

}  // namespace

TEST(IdealFromGenerators, Examples) {
  EXPECT_TRUE(p1(cubic(1)).is_unit_ideal());
  EXPECT_EQ(p1(cubic(2)).norm(), 2);
  EXPECT_EQ(principal_ideal(cubic(3)->from_int(2)).norm(), 8);
}

TEST(IdealFromGenerators, RejectsBadInput) {
  auto k = cubic(2);
  try {
    from(k, {k->zero()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroIdeal);
  }
  try {
    from(k, {k->theta() * Rational(1, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegral);
  }
}

TEST(IdealNorm, Examples) {
  auto k = cubic(2);
  EXPECT_EQ(ideal_norm(IntegerIdeal::unit(k)), 1);
  EXPECT_EQ(ideal_norm(p1(k)), 2);
  EXPECT_EQ(ideal_norm(principal_ideal(k->theta() * k->theta() - k->one())), 8);
}

TEST(QuotientStructure, Examples) {
  auto k = cubic(2);
  EXPECT_TRUE(quotient_structure(IntegerIdeal::unit(k)).is_trivial());
  EXPECT_EQ(quotient_structure(p1(k)).elementary_divisors(), (IntVector{2}));
  EXPECT_EQ(quotient_structure(principal_ideal(k->from_int(2))).elementary_divisors(), (IntVector{2, 2, 2}));
}

TEST(InverseFractional, Examples) {
  auto k = cubic(2);
  auto o = inverse_fractional(IntegerIdeal::unit(k));
  EXPECT_EQ(o.denominator, 1);
  EXPECT_TRUE(o.numerator.is_unit_ideal());

  auto half = inverse_fractional(principal_ideal(k->from_int(2)));
  EXPECT_EQ(half.denominator, 2);
  EXPECT_TRUE(half.numerator.is_unit_ideal());

  FieldElement pi = k->theta() - k->one();
  auto inv = inverse_fractional(principal_ideal(pi));
  EXPECT_TRUE(inv.contains(inverse(pi)));
  for (const auto& b : inv.numerator.basis_elements()) {
    FieldElement x = b * Rational(Int(1), inv.denominator);
    EXPECT_TRUE((x * pi).is_integral());
  }
}

TEST(ProductAndSum, Examples) {
  auto k = cubic(2);
  IntegerIdeal p = p1(k);
  EXPECT_EQ(ideal_product(p, IntegerIdeal::unit(k)), p);
  EXPECT_EQ(ideal_sum(p, principal_ideal(k->theta() + k->one())), p);
  EXPECT_EQ(ideal_product(principal_ideal(k->from_int(2)), principal_ideal(k->from_int(3))),
            principal_ideal(k->from_int(6)));
}

TEST(ProductAndSum, Coprimality) {
  auto k = cubic(2);
  EXPECT_TRUE(coprime(p1(k), principal_ideal(k->from_int(3))));
  EXPECT_FALSE(coprime(p1(k), principal_ideal(k->from_int(2))));
}

TEST(ResidueUnitCount, Examples) {
  auto k = cubic(2);
  EXPECT_EQ(residue_unit_count(p1(k)), 1);
  EXPECT_EQ(residue_unit_count(principal_ideal(k->from_int(2))), 3);
  EXPECT_EQ(residue_unit_count(IntegerIdeal::unit(k)), 1);
}

TEST(ResidueUnitCount, CapIsEnforced) {
  auto k = cubic(2);
  try {
    residue_unit_count_enumeration(principal_ideal(k->from_int(101)), 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
  // Beyond the cap only the splitting path runs.
  EXPECT_EQ(residue_unit_count(principal_ideal(k->from_int(101)), 1000),
            residue_unit_count_euler_phi(principal_ideal(k->from_int(101))));
}

TEST(ResidueUnitGroup, Examples) {
  auto k = cubic(2);
  ResidueUnitGroup g3(ideal_power(p1(k), 3));
  EXPECT_EQ(g3.unit_count(), 4);
  EXPECT_TRUE(ResidueUnitGroup(IntegerIdeal::unit(k)).structure().is_trivial());
  EXPECT_EQ(ResidueUnitGroup(principal_ideal(k->from_int(2))).structure().elementary_divisors(), (IntVector{3}));
}

TEST(ResidueUnitGroup, DiscreteLogIsAHomomorphism) {
  std::mt19937_64 rng(9);
  auto k = cubic(2);
  for (auto ideal : {principal_ideal(k->from_int(5)), ideal_power(p1(k), 5), principal_ideal(k->from_int(12))}) {
    ResidueUnitGroup g(ideal);
    const auto& d = g.structure().elementary_divisors();
    int checked = 0;
    while (checked < 50) {
      auto a = random_element(rng, k, 40), b = random_element(rng, k, 40);
      if (!g.ring().is_unit(g.ring().reduce(a)) || !g.ring().is_unit(g.ring().reduce(b))) continue;
      IntVector la = g.discrete_log(a), lb = g.discrete_log(b), lab = g.discrete_log(a * b);
      for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(floor_mod(la[i] + lb[i] - lab[i], d[i]), 0);
      ++checked;
    }
    try {
      g.discrete_log(k->zero());
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotAUnitResidue);
    }
  }
}

TEST(PrimeSplitting, Examples) {
  auto s2 = prime_splitting(cubic(2), 2);
  ASSERT_EQ(s2.size(), 2u);
  std::vector<unsigned> degrees{s2[0].residue_degree, s2[1].residue_degree};
  std::sort(degrees.begin(), degrees.end());
  EXPECT_EQ(degrees, (std::vector<unsigned>{1, 2}));

  auto inert = prime_splitting(cubic(1), 2);
  ASSERT_EQ(inert.size(), 1u);
  EXPECT_EQ(inert[0].residue_degree, 3u);

  auto ram = prime_splitting(cubic(1), 31);
  bool ramified = false;
  for (const auto& f : ram) ramified = ramified || f.ramification > 1;
  EXPECT_TRUE(ramified);
}

TEST(PrimeSplitting, IndexDivisorIsRefused) {
  // 5 divides [O_K : Z[theta]] for x^3 + 8x - 1.
  try {
    prime_splitting(cubic(8), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexDivisor);
  }
}

TEST(Properties, NormIsMultiplicativeOnPrincipalIdeals) {
  std::mt19937_64 rng(10);
  for (auto k : {cubic(1), cubic(2), cubic(9), quartic()}) {
    for (int t = 0; t < 40; ++t) {
      auto a = random_element(rng, k, 9), b = random_element(rng, k, 9);
      if (a.is_zero() || b.is_zero()) continue;
      auto ia = principal_ideal(a), ib = principal_ideal(b);
      EXPECT_EQ(ideal_norm(ideal_product(ia, ib)), ideal_norm(ia) * ideal_norm(ib));
      EXPECT_EQ(Rational(ideal_norm(ia)), ::abs(norm(a)));
      EXPECT_EQ(quotient_structure(ia).order(), ideal_norm(ia));
    }
  }
}

TEST(Properties, IdealsAreClosedUnderTheRing) {
  std::mt19937_64 rng(11);
  for (auto k : {cubic(2), cubic(8), quartic()}) {
    for (int t = 0; t < 20; ++t) {
      auto a = random_element(rng, k, 9);
      if (a.is_zero()) continue;
      auto ia = from(k, {a, k->from_int(Int(2 + t))});
      for (const auto& e : ia.basis_elements())
        for (std::size_t i = 0; i < k->degree(); ++i) EXPECT_TRUE(ia.contains(e * k->basis_element(i)));
    }
  }
}

TEST(Properties, InversionOnTheCorpus) {
  for (int m = 1; m <= 10; ++m) {
    auto k = cubic(m);
    for (auto ideal : {p1(k), principal_ideal(k->theta() * k->theta() - k->one()), principal_ideal(k->from_int(6))}) {
      auto inv = inverse_fractional(ideal);
      // I (O:I) = O  <=>  I * numerator = (denominator).
      EXPECT_EQ(ideal_product(ideal, inv.numerator), principal_ideal(k->from_int(inv.denominator))) << m;
    }
  }
}

TEST(Properties, ResidueCountPathsAgree) {
  for (int m = 1; m <= 10; ++m) {
    auto k = cubic(m);
    for (long n : {2L, 3L, 4L, 6L, 10L}) {
      auto ideal = principal_ideal(k->from_int(n));
      auto detail = residue_unit_count_detail(ideal);
      ASSERT_TRUE(detail.by_enumeration.has_value());
      if (detail.by_euler_phi) EXPECT_EQ(*detail.by_enumeration, *detail.by_euler_phi) << m << " " << n;
    }
  }
}

TEST(Properties, SplittingDegreesSumToN) {
  for (int m = 1; m <= 10; ++m) {
    auto k = cubic(m);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 31L, 59L}) {
      std::vector<PrimeIdealFactor> fs;
      try {
        fs = prime_splitting(k, p);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IndexDivisor);
        continue;
      }
      unsigned sum = 0;
      for (const auto& f : fs) sum += f.ramification * f.residue_degree;
      EXPECT_EQ(sum, 3u) << m << " " << p;
    }
  }
}
