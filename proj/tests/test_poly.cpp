#include <gtest/gtest.h>

#include "otarith/errors.hpp"
#include "otarith/poly.hpp"
#include "otarith/roots.hpp"

using namespace otarith;

namespace {
ZPoly cubic_poly(long p, long q) { return ZPoly{Int(q), Int(p), Int(0), Int(1)}; }
}  // namespace

TEST(Poly, CoefficientsAreAscending) {
  ZPoly f{Int(-1), Int(1), Int(0), Int(1)};
  EXPECT_EQ(f.degree(), 3);
  EXPECT_EQ(f.coeff(0), -1);
  EXPECT_EQ(f(Int(1)), 1);
  EXPECT_EQ(f(Int(2)), 9);
}

TEST(Poly, CubicDiscriminantFormula) {
  for (long p = -5; p <= 5; ++p)
    for (long q = -5; q <= 5; ++q)
      EXPECT_EQ(discriminant(cubic_poly(p, q)), -4 * p * p * p - 27 * q * q) << p << " " << q;
}

TEST(Poly, ResultantWithLinearIsValue) {
  // Res(f, x - 1) = +-f(1).
  for (int m = 1; m <= 10; ++m) EXPECT_EQ(::abs(resultant(cubic_poly(m, -1), ZPoly{Int(-1), Int(1)})), m);
}

TEST(Poly, DivmodAndGcd) {
  QPoly a = to_rational(ZPoly{Int(-1), Int(0), Int(1)});  // x^2 - 1
  QPoly b = to_rational(ZPoly{Int(1), Int(1)});           // x + 1
  auto [q, r] = divmod(a, b);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q, to_rational(ZPoly{Int(-1), Int(1)}));
  EXPECT_EQ(gcd(a, to_rational(ZPoly{Int(-1), Int(1)}) * to_rational(ZPoly{Int(2), Int(1)})),
            to_rational(ZPoly{Int(-1), Int(1)}));
}

TEST(Poly, SquarefreeDecomposition) {
  // (x - 1)^2 (x + 2)
  ZPoly f = ZPoly{Int(-1), Int(1)} * ZPoly{Int(-1), Int(1)} * ZPoly{Int(2), Int(1)};
  auto parts = squarefree_decomposition(to_rational(f));
  QPoly prod = QPoly::constant(Rational(1));
  for (const auto& [g, k] : parts)
    for (unsigned i = 0; i < k; ++i) prod *= g;
  EXPECT_EQ(primitive_part(prod), f);
  bool saw_square = false;
  for (const auto& [g, k] : parts)
    if (k == 2) saw_square = (g.degree() == 1);
  EXPECT_TRUE(saw_square);
}

TEST(Poly, FactorModTwo) {
  // x^3 + 2x - 1 = (x + 1)(x^2 + x + 1) mod 2.
  auto fs = factor_mod_p(cubic_poly(2, -1), 2);
  ASSERT_EQ(fs.size(), 2u);
  std::vector<int> degrees;
  for (const auto& [g, e] : fs) {
    degrees.push_back(g.degree());
    EXPECT_EQ(e, 1u);
  }
  std::sort(degrees.begin(), degrees.end());
  EXPECT_EQ(degrees, (std::vector<int>{1, 2}));
  // x^3 + x + 1 stays irreducible.
  EXPECT_EQ(factor_mod_p(cubic_poly(1, -1), 2).size(), 1u);
}

TEST(Poly, SturmCounts) {
  SturmSequence s(to_rational(ZPoly{Int(-2), Int(0), Int(0), Int(0), Int(1)}));
  EXPECT_EQ(s.count_all(), 2u);
  EXPECT_EQ(s.count(Rational(0), Rational(2)), 1u);
  EXPECT_EQ(SturmSequence(to_rational(cubic_poly(1, -1))).count_all(), 1u);
}

TEST(Roots, IsolationOfSqrtTwo) {
  auto iso = isolate_roots(to_rational(ZPoly{Int(-2), Int(0), Int(1)}), 64);
  ASSERT_EQ(iso.real_roots.size(), 2u);
  EXPECT_TRUE(iso.complex_roots.empty());
  EXPECT_LT(iso.real_roots[0].hi, Rational(-141421, 100000));
  EXPECT_GT(iso.real_roots[1].lo, Rational(141421, 100000));
  EXPECT_LT(iso.real_roots[1].hi, Rational(141422, 100000));
  EXPECT_LT(iso.real_roots[1].hi - iso.real_roots[1].lo, Rational(1, 1) / Rational(Int(1) << 64));
}

TEST(Roots, CubicHasOneRealRootAndAPair) {
  auto iso = isolate_roots(to_rational(cubic_poly(1, -1)), 80);
  ASSERT_EQ(iso.real_roots.size(), 1u);
  ASSERT_EQ(iso.complex_roots.size(), 1u);
  EXPECT_GT(iso.real_roots[0].lo, Rational(6823, 10000));
  EXPECT_LT(iso.real_roots[0].hi, Rational(6824, 10000));
  EXPECT_GT(iso.complex_roots[0].center_im, 0);
  Interval mod = iso.complex_roots[0].box(128).abs();
  EXPECT_GT(mod.lo_double(), 1.2106);
  EXPECT_LT(mod.hi_double(), 1.2107);
}

TEST(Roots, QuarticBoxesAreDisjoint) {
  auto iso = isolate_roots(to_rational(ZPoly{Int(-2), Int(0), Int(0), Int(0), Int(1)}), 64);
  ASSERT_EQ(iso.real_roots.size(), 2u);
  ASSERT_EQ(iso.complex_roots.size(), 1u);
  EXPECT_LT(iso.real_roots[0].hi, iso.real_roots[1].lo);
  EXPECT_NEAR(iso.real_roots[1].lo.get_d(), 1.18921, 1e-5);
}
