#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otarith/ideal.hpp"
#include "otarith/interval.hpp"
#include "otarith/numfield.hpp"

namespace otarith {

// Subgroup of O_K^x generated by verified, multiplicatively independent units.
class UnitSubgroup {
 public:
  UnitSubgroup(FieldPtr field, std::vector<FieldElement> generators);

  const FieldPtr& field() const { return field_; }
  const std::vector<FieldElement>& generators() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }

 private:
  FieldPtr field_;
  std::vector<FieldElement> gens_;
};

enum class UnitProvenance { Input, SearchedCertified };

std::string_view to_string(UnitProvenance p);

// Declared generators of the totally positive units O_K^{x,+} (rank s + t - 1).
struct UnitBasis {
  FieldPtr field;
  std::vector<FieldElement> units;
  UnitProvenance provenance = UnitProvenance::Input;
  std::string certificate;

  std::size_t rank() const { return units.size(); }
};

// Checks total positivity and independence of the declared units.
UnitBasis make_unit_basis(const FieldPtr& field, std::vector<FieldElement> units,
                          UnitProvenance provenance = UnitProvenance::Input, std::string certificate = {});

// |N(a)| == 1 for integral a; throws NonIntegral otherwise.
bool is_unit(const FieldElement& a);

// log|sigma(a)| at every place (real places first), enclosed.
std::vector<Interval> log_embedding(const FieldElement& a, const EmbeddingSet& emb);

// Ideal generated by g - 1 over the generators g of U.
IntegerIdeal j_ideal(const UnitSubgroup& group);

// Totally positive generators of the kernel of the sign map on <units>
// (optionally together with -1).
UnitBasis totally_positive_subgroup(std::span<const FieldElement> units, bool include_minus_one);

FieldElement unit_from_exponents(std::span<const FieldElement> basis, std::span<const Int> exponents);

// Integer exponents e with u == prod basis_i^e_i. Candidates come from rounding a
// least-squares solve on the log embedding; the exact product is authoritative.
// Throws NotInSpan.
IntVector exponent_vector(const FieldElement& u, std::span<const FieldElement> basis);
inline IntVector exponent_vector(const FieldElement& u, const UnitBasis& basis) {
  return exponent_vector(u, basis.units);
}

// Rows are exponent vectors of U's generators over `basis`.
IntMatrix exponent_matrix(std::span<const FieldElement> gens, std::span<const FieldElement> basis);

// [V : U] for U contained in V. Throws NotSubgroup.
Int subgroup_index(const UnitSubgroup& sub, std::span<const FieldElement> super);
inline Int subgroup_index(const UnitSubgroup& sub, const UnitBasis& super) { return subgroup_index(sub, super.units); }
inline Int subgroup_index(const UnitSubgroup& sub, const UnitSubgroup& super) {
  return subgroup_index(sub, super.generators());
}

struct AdmissibilityCertificate {
  bool admissible = false;
  std::string failing_clause;               // empty when admissible
  std::optional<Interval> log_determinant;  // det(log sigma_j(u_i)) over the real places
  bool cited_definition_only = false;       // t > 1: checked clauses are the cited rank-s ones
};

AdmissibilityCertificate is_admissible(const UnitSubgroup& group);

struct SimpleTypeResult {
  bool simple = false;
  std::size_t span_dimension = 0;
  RatMatrix span_basis;  // Q-basis of Q(U) in integral-basis coordinates
};

SimpleTypeResult is_simple_type(const UnitSubgroup& group);

struct UnitSearchOptions {
  long initial_box = 2;
  long max_box = 256;
};

// Totally positive fundamental unit of a field with signature (1, 1), certified
// not to be a proper power by the lower bound on the regulator.
UnitBasis rank1_fundamental_unit_search(const FieldPtr& field, const UnitSearchOptions& options = {});

}  // namespace otarith
