#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "otarith/errors.hpp"
#include "otarith/numfield.hpp"

using namespace otarith;
using otarith::testing::cubic;
using otarith::testing::elem;
using otarith::testing::quartic;
using otarith::testing::random_element;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

FieldPtr quadratic(long c) { return NumberField::build(ZPoly{Int(c), Int(0), Int(1)}); }

}  // namespace

TEST(BuildField, Cubics) {
  auto k1 = cubic(1);
  EXPECT_EQ(k1->degree(), 3u);
  EXPECT_EQ(k1->signature(), (Signature{1, 1}));
  EXPECT_EQ(k1->discriminant(), -31);
  auto k2 = cubic(2);
  EXPECT_EQ(k2->signature(), (Signature{1, 1}));
  EXPECT_EQ(k2->discriminant(), -59);
}

TEST(BuildField, Quartic) { EXPECT_EQ(quartic()->signature(), (Signature{2, 1})); }

TEST(BuildField, SuppliedBasesShrinkTheDiscriminant) {
  // x^3 + 8x - 1 has poly discriminant -2075 = -83 * 25.
  auto k8 = cubic(8);
  EXPECT_EQ(k8->poly_discriminant(), -2075);
  EXPECT_EQ(k8->discriminant(), -83);
  EXPECT_FALSE(k8->is_power_basis());
  auto k9 = cubic(9);
  EXPECT_EQ(k9->discriminant() * 9, k9->poly_discriminant());
}

TEST(BuildField, Errors) {
  EXPECT_EQ(code_of([] { NumberField::build(ZPoly{Int(-1), Int(0), Int(0), Int(0), Int(1)}); }), ErrorCode::Reducible);
  EXPECT_EQ(code_of([] { NumberField::build(ZPoly{Int(4), Int(0), Int(0), Int(0), Int(1)}); }), ErrorCode::Reducible);
  EXPECT_EQ(code_of([] { NumberField::build(ZPoly{Int(-1), Int(0), Int(2)}); }), ErrorCode::NonMonic);
  // Not a ring: the third row is not integral over Z.
  EXPECT_EQ(code_of([] {
              NumberField::build(ZPoly{Int(-1), Int(1), Int(0), Int(1)},
                                 RatMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1, 2)}});
            }),
            ErrorCode::InvalidBasis);
}

TEST(Arithmetic, Examples) {
  auto k = cubic(1);
  FieldElement t = k->theta();
  EXPECT_EQ(t * (t * t), elem(k, {1, -1, 0}));
  EXPECT_EQ(t * k->one(), t);
  auto k2 = cubic(2);
  EXPECT_EQ(pow(k2->theta(), 4LL), elem(k2, {0, 1, -2}));
  EXPECT_EQ(inverse(t) * t, k->one());
  EXPECT_EQ(code_of([&] { (void)(t + k2->theta()); }), ErrorCode::MixedFields);
  EXPECT_EQ(code_of([&] { (void)inverse(k->zero()); }), ErrorCode::ZeroElement);
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm(cubic(1)->theta()), 1);
  auto k2 = cubic(2);
  EXPECT_EQ(norm(k2->one() - k2->theta()), 2);
  EXPECT_EQ(norm(k2->from_int(2)), 8);
}

TEST(Embeddings, Examples) {
  auto e1 = cubic(1)->embeddings(128);
  ASSERT_EQ(e1->places.size(), 2u);
  EXPECT_EQ(e1->real_count(), 1u);
  EXPECT_NEAR(e1->places[0].theta.re.mid_double(), 0.6823278, 1e-6);
  EXPECT_NEAR(e1->places[1].theta.abs().mid_double(), 1.2106, 1e-3);
  EXPECT_GT(e1->places[1].theta.im.lo_double(), 0.0);

  auto e2 = quadratic(-2)->embeddings(128);
  ASSERT_EQ(e2->places.size(), 2u);
  EXPECT_NEAR(e2->places[0].theta.re.mid_double(), -1.41421356, 1e-8);
  EXPECT_NEAR(e2->places[1].theta.re.mid_double(), 1.41421356, 1e-8);

  auto e4 = quartic()->embeddings(128);
  ASSERT_EQ(e4->places.size(), 3u);
  EXPECT_EQ(e4->real_count(), 2u);
  EXPECT_NEAR(e4->places[1].theta.re.mid_double(), 1.18920712, 1e-8);
  EXPECT_FALSE(e4->places[2].real);
}

TEST(TotalPositivity, Examples) {
  auto k = cubic(1);
  EXPECT_TRUE(is_totally_positive(k->theta()));
  EXPECT_FALSE(is_totally_positive(-k->theta()));
  EXPECT_TRUE(is_totally_positive(k->one() - k->theta()));
}

TEST(Automorphisms, Examples) {
  auto a1 = cubic(1)->automorphisms();
  ASSERT_EQ(a1.size(), 1u);
  EXPECT_TRUE(a1[0].is_identity());
  auto k4 = quartic();
  const auto& a4 = k4->automorphisms();
  ASSERT_EQ(a4.size(), 2u);
  std::vector<FieldElement> images{a4[0].image_of_theta(), a4[1].image_of_theta()};
  EXPECT_NE(std::find(images.begin(), images.end(), k4->theta()), images.end());
  EXPECT_NE(std::find(images.begin(), images.end(), -k4->theta()), images.end());
  EXPECT_EQ(quadratic(-2)->automorphisms().size(), 2u);
}

TEST(MinPoly, Examples) {
  auto k4 = quartic();
  EXPECT_EQ(min_poly(k4->theta()), k4->min_poly());
  EXPECT_EQ(min_poly(elem(k4, {3, 0, 2, 0})), (ZPoly{Int(1), Int(-6), Int(1)}));
  EXPECT_EQ(min_poly(k4->from_int(5)), (ZPoly{Int(-5), Int(1)}));
}

TEST(Dedekind, Examples) {
  EXPECT_TRUE(dedekind_maximality_check(*cubic(1), 31));
  EXPECT_TRUE(dedekind_maximality_check(*cubic(2), 59));
  // Z[sqrt(-3)] has index 2 in the ring of integers of Q(sqrt(-3)), so the
  // criterion must report non-maximality at 2.
  EXPECT_FALSE(dedekind_maximality_check(*quadratic(3), 2));
  EXPECT_FALSE(power_order_is_p_maximal(ZPoly{Int(3), Int(0), Int(1)}, 2));
  EXPECT_FALSE(power_order_is_p_maximal(ZPoly{Int(-1), Int(8), Int(0), Int(1)}, 5));
  EXPECT_TRUE(power_order_is_p_maximal(ZPoly{Int(-2), Int(0), Int(0), Int(0), Int(1)}, 2));
}

TEST(Properties, NormIsMultiplicative) {
  std::mt19937_64 rng(1);
  for (auto k : {cubic(1), cubic(2), cubic(8), quartic()}) {
    for (int t = 0; t < 100; ++t) {
      auto a = random_element(rng, k, 20), b = random_element(rng, k, 20);
      EXPECT_EQ(norm(a * b), norm(a) * norm(b));
    }
  }
}

TEST(Properties, EmbeddingProductMatchesNorm) {
  std::mt19937_64 rng(2);
  for (auto k : {cubic(1), cubic(5), cubic(9), quartic()}) {
    auto emb = k->embeddings(128);
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(rng, k, 20);
      if (a.is_zero()) continue;
      Interval prod(1L, 128);
      for (const auto& pl : emb->places) {
        ComplexInterval z = embed(a, pl, 128);
        prod *= pl.real ? z.abs() : z.abs2();
      }
      Rational an = ::abs(norm(a));
      EXPECT_TRUE(prod.contains(an));
      EXPECT_LT(prod.width(), 1e-20 * (1 + an.get_d()));
    }
  }
}

TEST(Properties, AutomorphismsAreRingMaps) {
  std::mt19937_64 rng(3);
  auto k = quartic();
  for (const auto& g : k->automorphisms()) {
    EXPECT_EQ(g(k->from_int(7)), k->from_int(7));
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(rng, k, 10), b = random_element(rng, k, 10);
      EXPECT_EQ(g(a + b), g(a) + g(b));
      EXPECT_EQ(g(a * b), g(a) * g(b));
    }
    // Real roots are permuted: the image of theta is real at every real place.
    EXPECT_EQ(min_poly(g.image_of_theta()), k->min_poly());
  }
}

TEST(Properties, MinPolyVanishes) {
  std::mt19937_64 rng(4);
  for (auto k : {cubic(3), cubic(8), quartic()}) {
    for (int t = 0; t < 30; ++t) {
      auto a = random_element(rng, k, 5);
      ZPoly f = min_poly(a);
      FieldElement acc = k->zero();
      for (int i = f.degree(); i >= 0; --i) acc = acc * a + k->from_int(f.coeff(static_cast<std::size_t>(i)));
      EXPECT_TRUE(acc.is_zero());
      EXPECT_EQ(k->degree() % static_cast<std::size_t>(f.degree()), 0u);
    }
  }
}

TEST(Properties, SignatureSumsToDegree) {
  for (int m = 1; m <= 10; ++m) {
    auto k = cubic(m);
    EXPECT_EQ(k->signature().real + 2 * k->signature().complex, k->degree());
  }
  auto k = quartic();
  EXPECT_EQ(k->signature().real + 2 * k->signature().complex, k->degree());
}

TEST(Properties, IntegralityMatchesCoordinates) {
  auto k = cubic(8);
  FieldElement w = k->basis_element(2);  // (2 + 3 theta + theta^2) / 5
  EXPECT_TRUE(w.is_integral());
  EXPECT_EQ(min_poly(w).leading(), 1);
  FieldElement half = k->theta() * Rational(1, 2);
  EXPECT_FALSE(half.is_integral());
}
