#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otarith/ideal.hpp"
#include "otarith/numfield.hpp"
#include "otarith/units.hpp"

namespace otarith {

// m0 together with a 0/1 mark per real place. Complex places carry 0.
struct Modulus {
  FieldPtr field;
  IntegerIdeal finite_part;
  std::vector<int> real_multiplicities;

  Modulus(FieldPtr f, IntegerIdeal m0, std::vector<int> real_mult);
  bool all_real_marked() const;
};

// Trivial finite part, every real place marked.
Modulus trivial_modulus(const FieldPtr& field);

// U_{m,1} inside O_K^{x,+}: kernel of O_K^{x,+} -> (O_K/m0)^x.
struct RayUnitGroup {
  UnitSubgroup group;
  IntMatrix exponents;  // rows: generators as exponent vectors over the basis
  Int index;            // [O_K^{x,+} : U_{m,1}]
};

RayUnitGroup ray_unit_group(const Modulus& m, const UnitBasis& basis, std::uint64_t cap = kDefaultEnumCap);

Modulus build_exceptional_modulus(const UnitSubgroup& group);

struct ExceptionalVerdict {
  bool exceptional = false;
  std::optional<IntMatrix> j_hnf;   // HNF of J(U_{m,1})
  IntMatrix m0_hnf;
};

ExceptionalVerdict is_exceptional(const Modulus& m, const UnitBasis& basis, std::uint64_t cap = kDefaultEnumCap);

// h_m / h through the exact sequence; throws NonIntegralRatio if it is not integral.
Int ray_ratio(const Modulus& m, const UnitBasis& basis, std::uint64_t cap = kDefaultEnumCap);

struct RayReport {
  RayUnitGroup ray_units;
  Int unit_quotient_order;      // |O_K^{x,+} / U_{m,1}|
  Int full_unit_quotient_order; // |O_K^x / U_{m,1}| with O_K,tor^x = {+-1}
  Int residue_unit_order;       // |(O_K/m0)^x|
  Int ratio;                    // h_m / h
  bool exceptional = false;
  Int residue_ring_order;       // |O_K/J(U_{m,1})|
  Int au_order;                 // |A_{U_{m,1}}|
  Rational chi_f;
  Rational rhs;                 // chi_f / |A_U|
  bool inequality_holds = false;
  bool equality = false;
};

// Throws NotExceptional, NotAdmissible.
RayReport verify_inequality(const Modulus& m, const UnitBasis& basis, std::uint64_t cap = kDefaultEnumCap);

}  // namespace otarith
