#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otarith/bigint.hpp"
#include "otarith/linalg.hpp"
#include "otarith/numfield.hpp"

namespace otarith {

inline constexpr std::uint64_t kDefaultEnumCap = 1'000'000;

// Finite abelian group Z/d1 x ... x Z/dk with d1 | d2 | ... and each dj >= 2.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  // Accepts any list of positive cyclic orders; normalizes to invariant factors.
  static FiniteAbelianGroup from_cyclic_orders(std::span<const Int> orders);

  const IntVector& elementary_divisors() const { return divisors_; }
  Int order() const;
  std::size_t invariant_factor_count() const { return divisors_.size(); }
  bool is_trivial() const { return divisors_.empty(); }
  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  IntVector divisors_;
};

// Nonzero integral ideal of the order, as a lattice with a square HNF basis
// (rows in integral-basis coordinates).
class IntegerIdeal {
 public:
  IntegerIdeal(FieldPtr field, IntMatrix hnf_basis);
  static IntegerIdeal unit(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const IntMatrix& basis() const { return basis_; }
  Int norm() const;
  bool is_unit_ideal() const;
  bool contains(const FieldElement& a) const;
  bool contains(const IntegerIdeal& other) const;
  std::vector<FieldElement> basis_elements() const;
  std::string to_string() const;

  friend bool operator==(const IntegerIdeal& a, const IntegerIdeal& b) {
    return a.field_ == b.field_ && a.basis_ == b.basis_;
  }

 private:
  FieldPtr field_;
  IntMatrix basis_;
};

// (1/denominator) * numerator with the denominator minimal.
struct FractionalIdeal {
  IntegerIdeal numerator;
  Int denominator;

  bool contains(const FieldElement& a) const;
  // Basis rows (rational) of the lattice.
  RatMatrix basis() const;
};

IntegerIdeal ideal_from_generators(const FieldPtr& field, std::span<const FieldElement> gens);
IntegerIdeal principal_ideal(const FieldElement& a);
Int ideal_norm(const IntegerIdeal& ideal);
FiniteAbelianGroup quotient_structure(const IntegerIdeal& ideal);
IntegerIdeal ideal_product(const IntegerIdeal& a, const IntegerIdeal& b);
IntegerIdeal ideal_sum(const IntegerIdeal& a, const IntegerIdeal& b);
IntegerIdeal ideal_power(const IntegerIdeal& a, unsigned k);
// a + b == O_K (determinant test, never a comparison of norms).
bool coprime(const IntegerIdeal& a, const IntegerIdeal& b);

// (O_K : I) = { beta : beta * I subset O_K }, computed as the trace dual of
// I * O_K^dual. Throws NonInvertible when I * (O_K : I) != O_K.
FractionalIdeal inverse_fractional(const IntegerIdeal& ideal);

struct PrimeIdealFactor {
  IntegerIdeal prime;
  unsigned residue_degree = 0;
  unsigned ramification = 0;
};

// Dedekind-Kummer factorization of p O_K. Throws IndexDivisor when Z[theta]
// is not p-maximal or p divides [O_K : Z[theta]].
std::vector<PrimeIdealFactor> prime_splitting(const FieldPtr& field, const Int& p);

// Prime ideals containing `ideal`, each with its exponent in the factorization.
// Throws IndexDivisor when a rational prime below cannot be split.
std::vector<std::pair<IntegerIdeal, unsigned>> prime_factorization(const IntegerIdeal& ideal);

// |(O_K/I)^x| by enumerating the HNF fundamental domain. Throws CapExceeded.
Int residue_unit_count_enumeration(const IntegerIdeal& ideal, std::uint64_t cap = kDefaultEnumCap);
// |(O_K/I)^x| = N(I) prod (1 - 1/N(P)). Throws IndexDivisor.
Int residue_unit_count_euler_phi(const IntegerIdeal& ideal);

struct ResidueUnitCount {
  Int count;
  std::optional<Int> by_enumeration;
  std::optional<Int> by_euler_phi;
};

// Runs both paths where available and cross-checks them (Internal on
// disagreement). Throws CapExceeded when neither path applies.
ResidueUnitCount residue_unit_count_detail(const IntegerIdeal& ideal, std::uint64_t cap = kDefaultEnumCap);
Int residue_unit_count(const IntegerIdeal& ideal, std::uint64_t cap = kDefaultEnumCap);

}  // namespace otarith
