#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "otarith/errors.hpp"
#include "otarith/ideal.hpp"
#include "otarith/ot_aut.hpp"
#include "otarith/torsion_growth.hpp"

using namespace otarith;
using otarith::testing::cubic;
using otarith::testing::quartic;
using otarith::testing::quartic_units;

namespace {

struct Case {
  UnitSubgroup group;
  UnitBasis basis;
};

Case cubic_case(int m, long power) {
  auto basis = rank1_fundamental_unit_search(cubic(m));
  return {UnitSubgroup(basis.field, {pow(basis.units[0], static_cast<long long>(power))}), basis};
}

Case quartic_case() {
  auto k = quartic();
  auto b = quartic_units(k);
  return {UnitSubgroup(k, b.units), b};
}

std::vector<Case> corpus_cases() {
  std::vector<Case> out;
  for (int m = 1; m <= 4; ++m) out.push_back(cubic_case(m, 1));
  out.push_back(cubic_case(2, 2));
  out.push_back(cubic_case(3, 3));
  out.push_back(quartic_case());
  return out;
}

bool is_pure_translation(const AutGroup& g, const AutElement& x) {
  for (const auto& e : x.unit_class)
    if (e != 0) return false;
  return g.automorphisms()[x.galois].is_identity();
}

}  // namespace

TEST(ComputeAU, Examples) {
  auto k1 = cubic(1);
  auto au = compute_au(UnitSubgroup(k1, {k1->theta()}));
  ASSERT_EQ(au.size(), 1u);
  EXPECT_TRUE(au[0].is_identity());

  auto q = quartic_case();
  auto au4 = compute_au(q.group);
  EXPECT_EQ(au4.size(), 2u);
  bool has_identity = false;
  for (const auto& g : au4) has_identity = has_identity || g.is_identity();
  EXPECT_TRUE(has_identity);
}

TEST(AutFiltration, Examples) {
  auto c1 = cubic_case(1, 1);
  auto r1 = aut_filtration(c1.group, c1.basis);
  EXPECT_TRUE(r1.gr0.is_trivial());
  EXPECT_EQ(r1.gr1_order(), Int(1));
  EXPECT_EQ(r1.gr2.size(), 1u);
  EXPECT_EQ(r1.chi_f, Rational(1));

  auto c2 = cubic_case(2, 1);
  auto r2 = aut_filtration(c2.group, c2.basis);
  EXPECT_EQ(r2.gr0.elementary_divisors(), (IntVector{2}));
  EXPECT_EQ(r2.gr1_order(), Int(1));
  EXPECT_EQ(r2.gr2.size(), 1u);
  EXPECT_EQ(r2.chi_f, Rational(2));

  auto c3 = cubic_case(2, 2);
  auto r3 = aut_filtration(c3.group, c3.basis);
  EXPECT_EQ(r3.gr0.order(), 8);
  EXPECT_EQ(r3.gr1_order(), Int(2));
  EXPECT_EQ(r3.gr2.size(), 1u);
  EXPECT_EQ(r3.chi_f, Rational(4));
}

TEST(AutFiltration, WithoutBasisUsesTheSearch) {
  auto c = cubic_case(2, 2);
  auto r = aut_filtration(c.group, std::nullopt);
  EXPECT_EQ(r.gr1_order(), Int(2));
}

TEST(AutFiltration, Refusals) {
  auto k = cubic(1);
  try {
    aut_filtration(UnitSubgroup(k, {-k->theta()}), std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAdmissible);
    EXPECT_TRUE(is_refusal(e.code()));
  }
}

TEST(ComposeAut, Examples) {
  auto c = cubic_case(2, 2);
  AutGroup g(c.group, c.basis);
  std::mt19937_64 rng(1);
  AutElement x = g.random(rng);
  EXPECT_EQ(g.compose(g.identity(), x), x);

  auto k = g.field();
  FieldElement c0 = inverse(c.group.generators()[0] - k->one());
  FieldElement b1 = c0 * k->theta(), b2 = c0 * k->theta() * k->theta();
  IntVector zero{0};
  std::size_t id = 0;
  while (!g.automorphisms()[id].is_identity()) ++id;
  AutElement t1 = g.make(b1, zero, id), t2 = g.make(b2, zero, id);
  EXPECT_EQ(g.compose(t1, t2), g.make(b1 + b2, zero, id));

  FieldElement v = c.basis.units[0];
  AutElement y = g.make(k->zero(), IntVector{1}, id);
  AutElement conj = g.compose(g.compose(y, t1), g.inverse(y));
  EXPECT_EQ(conj, g.make(v * b1, zero, id));
}

TEST(ComposeAut, ContextMismatch) {
  auto c = cubic_case(2, 1);
  AutGroup g1(c.group, c.basis), g2(c.group, c.basis);
  try {
    g1.compose(g1.identity(), g2.identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContextMismatch);
  }
}

TEST(ComposeAut, TranslationsMustLieInTheLattice) {
  auto c = cubic_case(2, 1);
  AutGroup g(c.group, c.basis);
  auto k = g.field();
  try {
    g.make(k->theta() * Rational(1, 3), IntVector{0}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegral);
  }
}

TEST(Dietz, Examples) {
  auto c = cubic_case(2, 1);
  auto k = c.group.field();
  FieldElement u = c.group.generators()[0];
  FieldElement c0 = inverse(u - k->one());
  EXPECT_TRUE(verify_dietz_triple(c.group, dietz_coboundary(c.group, c0)).ok);
  EXPECT_TRUE(verify_dietz_triple(c.group, dietz_coboundary(c.group, k->zero())).ok);
  auto bad = verify_dietz_triple(c.group, dietz_constant(c.group, k->one()));
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.witness.empty());
}

TEST(Dietz, CoboundaryOutsideTheColonIdealFails) {
  auto c = cubic_case(2, 1);
  auto k = c.group.field();
  EXPECT_FALSE(verify_dietz_triple(c.group, dietz_coboundary(c.group, k->one() * Rational(1, 3))).ok);
}

TEST(H1, Examples) {
  auto h2 = h1_structure(cubic_case(2, 1).group);
  EXPECT_EQ(h2.torsion.elementary_divisors(), (IntVector{2}));
  EXPECT_EQ(h2.free_rank, 1u);
  auto h1 = h1_structure(cubic_case(1, 1).group);
  EXPECT_TRUE(h1.torsion.is_trivial());
  EXPECT_EQ(h1.free_rank, 1u);
  auto h3 = h1_structure(cubic_case(2, 2).group);
  EXPECT_EQ(h3.torsion.order(), 8);
  EXPECT_LE(h3.torsion.invariant_factor_count(), 3u);
  EXPECT_TRUE(h3.bound_holds);
}

// O_K/(1 - u^3) = (Z/2)^3 here, so H_1 needs four generators while s + 2t = 3.
TEST(H1, CombinedCountCanExceedTheDegree) {
  auto h = h1_structure(cubic_case(2, 3).group);
  EXPECT_EQ(h.torsion.elementary_divisors(), (IntVector{2, 2, 2}));
  EXPECT_TRUE(h.torsion_bound_holds);
  EXPECT_FALSE(h.bound_holds);
}

TEST(Geometry, Examples) {
  auto c1 = cubic_case(1, 1);
  auto g1 = geometric_invariants(c1.group);
  EXPECT_EQ(g1.dimension, 2u);
  EXPECT_EQ(g1.b1, 1u);
  EXPECT_EQ(g1.b2, 0u);
  EXPECT_TRUE(g1.lck);
  EXPECT_EQ(g1.lck_basis, "vacuous");
  // sqrt(31) * log(1.4655712...)
  EXPECT_NEAR(g1.volume_proxy.mid_double(), std::sqrt(31.0) * std::log(1.4655712318767680), 1e-9);

  auto q = quartic_case();
  auto g4 = geometric_invariants(q.group);
  EXPECT_EQ(g4.dimension, 3u);
  EXPECT_EQ(g4.b1, 2u);
  EXPECT_EQ(g4.b2, 1u);
}

TEST(Properties, GroupLaw) {
  std::mt19937_64 rng(77);
  for (const auto& c : corpus_cases()) {
    AutGroup g(c.group, c.basis);
    for (int t = 0; t < 300; ++t) {
      AutElement x = g.random(rng), y = g.random(rng), z = g.random(rng);
      EXPECT_EQ(g.compose(g.compose(x, y), z), g.compose(x, g.compose(y, z)));
      EXPECT_EQ(g.compose(x, g.identity()), x);
      EXPECT_EQ(g.compose(g.identity(), x), x);
      EXPECT_EQ(g.compose(x, g.inverse(x)), g.identity());
      EXPECT_EQ(g.compose(g.inverse(x), x), g.identity());
    }
  }
}

TEST(Properties, PureTranslationsFormANormalSubgroupOfOrderGr0) {
  std::mt19937_64 rng(78);
  for (const auto& c : corpus_cases()) {
    AutGroup g(c.group, c.basis);
    auto report = aut_filtration(c.group, c.basis);
    auto ts = g.pure_translations();
    EXPECT_EQ(Int(static_cast<unsigned long>(ts.size())), report.gr0.order());
    EXPECT_EQ(g.translation_count(), report.gr0.order());
    for (int t = 0; t < 30; ++t) {
      AutElement x = g.random(rng);
      const AutElement& tr = ts[rng() % ts.size()];
      EXPECT_TRUE(is_pure_translation(g, g.compose(g.compose(x, tr), g.inverse(x))));
    }
  }
}

TEST(Properties, ChiFIsDefinitional) {
  for (const auto& c : corpus_cases()) {
    auto r = aut_filtration(c.group, c.basis);
    ASSERT_TRUE(r.chi_f.has_value());
    ASSERT_TRUE(r.gr1_order().has_value());
    EXPECT_EQ(*r.chi_f, Rational(r.gr0.order() * Int(static_cast<unsigned long>(r.gr2.size()))) / Rational(*r.gr1_order()));
    EXPECT_EQ(r.gr0.order(), ideal_norm(j_ideal(c.group)));
  }
}

TEST(Properties, AUActsUnimodularlyOnU) {
  for (const auto& c : corpus_cases()) {
    const auto& gens = c.group.generators();
    for (const auto& g : compute_au(c.group)) {
      std::vector<FieldElement> images;
      for (const auto& u : gens) images.push_back(g(u));
      EXPECT_EQ(::abs(determinant(exponent_matrix(images, gens))), 1);
    }
  }
}

TEST(Properties, H1TorsionMatchesTorsionOrder) {
  for (int m : {1, 2, 3, 5}) {
    auto basis = rank1_fundamental_unit_search(cubic(m));
    FieldElement u = basis.units[0];
    for (long n = 1; n <= 6; ++n) {
      UnitSubgroup un(basis.field, {pow(u, static_cast<long long>(n))});
      auto h = h1_structure(un);
      EXPECT_EQ(h.torsion.order(), torsion_order(u, static_cast<unsigned long>(n)));
      EXPECT_TRUE(h.torsion_bound_holds);
      if (n == 1) EXPECT_TRUE(h.bound_holds);
    }
  }
}

TEST(Properties, InducedDietzTriplesWithTrivialDelta) {
  std::mt19937_64 rng(79);
  for (const auto& c : corpus_cases()) {
    AutGroup g(c.group, c.basis);
    auto k = g.field();
    for (int t = 0; t < 20; ++t) {
      AutElement x = g.random(rng);
      if (!g.automorphisms()[x.galois].is_identity()) continue;
      DietzTriple triple = g.induced_dietz_triple(x);
      EXPECT_TRUE(verify_dietz_triple(c.group, triple, 16, static_cast<std::uint64_t>(t)).ok);
      // beta(u) = c0 (u - 1) on the first generator recovers c0.
      IntVector e1(c.group.rank(), 0);
      e1[0] = 1;
      FieldElement c0 = triple.beta(e1) * inverse(c.group.generators()[0] - k->one());
      EXPECT_TRUE(g.translation_lattice().contains(c0));
    }
  }
}
