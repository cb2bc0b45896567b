#pragma once

#include <random>

#include "otarith/linalg.hpp"
#include "otarith/numfield.hpp"
#include "otarith/units.hpp"

namespace otarith::testing {

// x^3 + m x - 1, with the integral bases the corpus uses for m = 8 and m = 9.
inline FieldPtr cubic(int m) {
  std::optional<RatMatrix> basis;
  if (m == 8) basis = RatMatrix{{1, 0, 0}, {0, 1, 0}, {Rational(2, 5), Rational(3, 5), Rational(1, 5)}};
  if (m == 9) basis = RatMatrix{{1, 0, 0}, {0, 1, 0}, {Rational(1, 3), Rational(-2, 3), Rational(1, 3)}};
  return NumberField::build(ZPoly{Int(-1), Int(m), Int(0), Int(1)}, basis);
}

inline FieldPtr quartic() { return NumberField::build(ZPoly{Int(-2), Int(0), Int(0), Int(0), Int(1)}); }

// (1 + a)^2 and 1 + a^2 in Q(2^(1/4)).
inline UnitBasis quartic_units(const FieldPtr& k) {
  FieldElement a = k->theta();
  FieldElement one = k->one();
  return make_unit_basis(k, {pow(one + a, 2LL), one + a * a});
}

inline FieldElement elem(const FieldPtr& k, std::initializer_list<long> coords) {
  IntVector v;
  for (long c : coords) v.emplace_back(c);
  return k->element(v);
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline FieldElement random_element(std::mt19937_64& rng, const FieldPtr& k, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntVector v(k->degree());
  for (auto& x : v) x = d(rng);
  return k->element(v);
}

}  // namespace otarith::testing
