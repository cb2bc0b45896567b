#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "otarith/errors.hpp"
#include "otarith/ideal.hpp"
#include "otarith/units.hpp"

using namespace otarith;
using otarith::testing::cubic;
using otarith::testing::elem;
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

FieldElement searched_unit(int m) { return rank1_fundamental_unit_search(cubic(m)).units.at(0); }

}  // namespace

TEST(IsUnit, Examples) {
  auto k1 = cubic(1);
  EXPECT_TRUE(is_unit(k1->theta()));
  auto k2 = cubic(2);
  EXPECT_FALSE(is_unit(k2->theta() - k2->one()));
  EXPECT_TRUE(is_unit(k2->one()));
}

TEST(JIdeal, Examples) {
  auto k1 = cubic(1);
  EXPECT_TRUE(j_ideal(UnitSubgroup(k1, {k1->theta()})).is_unit_ideal());
  auto k2 = cubic(2);
  auto t = k2->theta();
  EXPECT_EQ(j_ideal(UnitSubgroup(k2, {t})), principal_ideal(t - k2->one()));
  EXPECT_EQ(j_ideal(UnitSubgroup(k2, {t * t})).norm(), 8);
  EXPECT_EQ(code_of([&] { j_ideal(UnitSubgroup(k2, {})); }), ErrorCode::ZeroIdeal);
}

TEST(TotallyPositiveSubgroup, Examples) {
  FieldElement v = searched_unit(2);
  auto k2 = v.field();
  auto same = totally_positive_subgroup(std::vector<FieldElement>{v}, false);
  ASSERT_EQ(same.rank(), 1u);
  EXPECT_EQ(same.units[0], v);

  auto drop = totally_positive_subgroup(std::vector<FieldElement>{-k2->one(), v}, false);
  ASSERT_EQ(drop.rank(), 1u);
  EXPECT_EQ(drop.units[0], v);

  auto sq = totally_positive_subgroup(std::vector<FieldElement>{-v}, false);
  ASSERT_EQ(sq.rank(), 1u);
  EXPECT_EQ(sq.units[0], v * v);
}

TEST(TotallyPositiveSubgroup, QuarticSignPatterns) {
  auto k = quartic();
  FieldElement e = k->one() + k->theta();  // 1 + 2^(1/4), negative at one real place
  FieldElement f = k->one() + k->theta() * k->theta();
  auto tp = totally_positive_subgroup(std::vector<FieldElement>{e, f}, true);
  ASSERT_EQ(tp.rank(), 2u);
  for (const auto& u : tp.units) EXPECT_TRUE(is_totally_positive(u));
}

TEST(ExponentVector, Examples) {
  FieldElement v = searched_unit(2);
  std::vector<FieldElement> basis{v};
  EXPECT_EQ(exponent_vector(v, basis), (IntVector{1}));
  EXPECT_EQ(exponent_vector(pow(v, 5LL), basis), (IntVector{5}));

  auto k = quartic();
  auto b = quartic_units(k);
  FieldElement u = pow(b.units[0], 2LL) * inverse(b.units[1]);
  EXPECT_EQ(exponent_vector(u, b), (IntVector{2, -1}));
  EXPECT_EQ(code_of([&] { exponent_vector(k->theta() + k->from_int(3), b); }), ErrorCode::NotInSpan);
}

TEST(SubgroupIndex, Examples) {
  FieldElement u = searched_unit(2);
  auto k = u.field();
  EXPECT_EQ(subgroup_index(UnitSubgroup(k, {pow(u, 7LL)}), UnitSubgroup(k, {u})), 7);
  EXPECT_EQ(subgroup_index(UnitSubgroup(k, {u}), UnitSubgroup(k, {u})), 1);
  auto k4 = quartic();
  auto b = quartic_units(k4);
  UnitSubgroup sub(k4, {pow(b.units[0], 2LL), pow(b.units[1], 3LL)});
  EXPECT_EQ(subgroup_index(sub, b), 6);
  EXPECT_EQ(code_of([&] { subgroup_index(UnitSubgroup(k, {u}), UnitSubgroup(k, {u * u})); }), ErrorCode::NotSubgroup);
}

TEST(Admissibility, Examples) {
  auto k1 = cubic(1);
  EXPECT_TRUE(is_admissible(UnitSubgroup(k1, {k1->theta()})).admissible);
  auto trivial = is_admissible(UnitSubgroup(k1, {}));
  EXPECT_FALSE(trivial.admissible);
  EXPECT_FALSE(trivial.failing_clause.empty());
  EXPECT_FALSE(is_admissible(UnitSubgroup(k1, {-k1->theta()})).admissible);
}

TEST(Admissibility, QuarticFlagsTheCitedDefinition) {
  auto k = quartic();
  auto cert = is_admissible(UnitSubgroup(k, quartic_units(k).units));
  EXPECT_TRUE(cert.admissible);
  EXPECT_FALSE(cert.cited_definition_only);  // t = 1
  ASSERT_TRUE(cert.log_determinant.has_value());
  EXPECT_FALSE(cert.log_determinant->contains_zero());
}

TEST(SimpleType, Examples) {
  auto k1 = cubic(1);
  EXPECT_TRUE(is_simple_type(UnitSubgroup(k1, {k1->theta()})).simple);
  auto k4 = quartic();
  auto st = is_simple_type(UnitSubgroup(k4, {elem(k4, {3, 0, 2, 0})}));
  EXPECT_FALSE(st.simple);
  EXPECT_EQ(st.span_dimension, 2u);
  EXPECT_FALSE(is_simple_type(UnitSubgroup(k4, {k4->one()})).simple);
}

TEST(UnitSearch, CorpusFields) {
  auto k1 = cubic(1);
  auto b1 = rank1_fundamental_unit_search(k1);
  EXPECT_EQ(b1.provenance, UnitProvenance::SearchedCertified);
  ASSERT_EQ(b1.rank(), 1u);
  EXPECT_EQ(b1.units[0], inverse(k1->theta()));
  auto emb = k1->embeddings(128);
  EXPECT_NEAR(embed(b1.units[0], emb->places[0], 128).re.mid_double(), 1.4655712, 1e-6);
  EXPECT_NE(b1.certificate.find("no k-th roots"), std::string::npos);

  for (int m : {2, 5}) {
    auto b = rank1_fundamental_unit_search(cubic(m));
    ASSERT_EQ(b.rank(), 1u);
    EXPECT_TRUE(is_totally_positive(b.units[0]));
    EXPECT_TRUE(is_unit(b.units[0]));
    EXPECT_FALSE(b.certificate.empty());
  }
}

TEST(UnitSearch, RejectsOtherSignatures) {
  EXPECT_EQ(code_of([] { rank1_fundamental_unit_search(quartic()); }), ErrorCode::UnsupportedSignature);
}

TEST(MakeUnitBasis, Validation) {
  FieldElement u = searched_unit(2);
  auto k = u.field();
  EXPECT_EQ(code_of([&] { make_unit_basis(k, {k->theta() - k->one()}); }), ErrorCode::NotUnit);
  EXPECT_EQ(code_of([&] { make_unit_basis(k, {u, u * u}); }), ErrorCode::ShapeError);
  EXPECT_EQ(code_of([&] { UnitSubgroup(k, {u, u * u}); }), ErrorCode::DependentGenerators);
  EXPECT_EQ(code_of([&] { UnitSubgroup(k, {-k->one()}); }), ErrorCode::DependentGenerators);
}

TEST(Properties, JIdealContainsWordsMinusOne) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> e(-3, 3);
  auto k4 = quartic();
  FieldElement u2 = searched_unit(2), u3 = searched_unit(3);
  std::vector<std::pair<FieldPtr, std::vector<FieldElement>>> cases{
      {k4, quartic_units(k4).units}, {u2.field(), {u2 * u2}}, {u3.field(), {u3}}};
  for (const auto& [k, gens] : cases) {
    UnitSubgroup g(k, gens);
    IntegerIdeal j = j_ideal(g);
    std::vector<FieldElement> sampled;
    for (int t = 0; t < 30; ++t) {
      IntVector ex(gens.size());
      for (auto& x : ex) x = e(rng);
      FieldElement w = unit_from_exponents(gens, ex);
      EXPECT_TRUE(j.contains(w - k->one()));
      if (!(w - k->one()).is_zero()) sampled.push_back(w - k->one());
    }
    for (const auto& gen : gens) sampled.push_back(gen - k->one());
    EXPECT_EQ(ideal_from_generators(k, sampled), j);
  }
}

TEST(Properties, ExponentRoundTrip) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> e(-6, 6);
  auto k4 = quartic();
  auto b = quartic_units(k4);
  for (int t = 0; t < 50; ++t) {
    IntVector ex{e(rng), e(rng)};
    FieldElement u = unit_from_exponents(b.units, ex);
    EXPECT_EQ(exponent_vector(u, b), ex);
    EXPECT_EQ(unit_from_exponents(b.units, exponent_vector(u, b)), u);
  }
}

TEST(Properties, IndexOfPowersAndAdmissibility) {
  for (int m : {1, 2, 4, 7}) {
    FieldElement u = searched_unit(m);
    auto k = u.field();
    UnitSubgroup full(k, {u});
    for (long n = 1; n <= 32; ++n) {
      UnitSubgroup un(k, {pow(u, static_cast<long long>(n))});
      EXPECT_EQ(subgroup_index(un, full), n);
      if (n <= 8) EXPECT_TRUE(is_admissible(un).admissible) << m << " " << n;
    }
  }
}

TEST(Properties, AutomorphismsPreserveTotalPositivity) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> e(-4, 4);
  auto k = quartic();
  auto b = quartic_units(k);
  for (const auto& g : k->automorphisms()) {
    for (int t = 0; t < 20; ++t) {
      FieldElement u = unit_from_exponents(b.units, IntVector{e(rng), e(rng)});
      ASSERT_TRUE(is_totally_positive(u));
      EXPECT_TRUE(is_totally_positive(g(u)));
    }
  }
}
