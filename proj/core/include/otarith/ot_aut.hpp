#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "otarith/ideal.hpp"
#include "otarith/numfield.hpp"
#include "otarith/units.hpp"

namespace otarith {

// A_U: field automorphisms g with g(U) == U.
std::vector<Automorphism> compute_au(const UnitSubgroup& group);

struct AutFiltrationReport {
  IntegerIdeal j;                          // J(U)
  FiniteAbelianGroup gr0;                  // O_K / J(U), non-canonical isomorphism
  std::optional<FiniteAbelianGroup> gr1;   // O_K^{x,+} / U, absent without a unit basis
  std::vector<Automorphism> gr2;           // A_U
  std::optional<Rational> chi_f;           // |gr0| |gr2| / |gr1|
  AdmissibilityCertificate admissibility;

  std::optional<Int> gr1_order() const;
};

// Refuses with NotAdmissible / NotSimpleType / UnsupportedSignature. Without a
// basis the gr1 piece comes from the rank-one search when the signature is
// (1, 1) and is otherwise reported as unknown.
AutFiltrationReport aut_filtration(const UnitSubgroup& group, const std::optional<UnitBasis>& basis);

// Dietz triple for pi = O_K x| U: alpha additive on O_K (x -> x * alpha on
// integral-basis coordinates), beta a map U -> O_K on exponent words, delta an
// automorphism of U (e -> e * delta on exponent vectors).
struct DietzTriple {
  IntMatrix alpha;
  std::function<FieldElement(std::span<const Int>)> beta;
  IntMatrix delta;
};

struct DietzVerdict {
  bool ok = false;
  std::string witness;
};

// Checks beta(b1 b2) == beta(b1) + beta(b2) delta(b1) and
// alpha(a b) == alpha(a) delta(b) on all pairs drawn from a bounded word set
// (identity, generators, inverses, pairwise products) plus random words.
DietzVerdict verify_dietz_triple(const UnitSubgroup& group, const DietzTriple& triple,
                                 std::size_t random_words = 32, std::uint64_t seed = 1);

// (id, b -> c0 (b - 1), id).
DietzTriple dietz_coboundary(const UnitSubgroup& group, const FieldElement& c0);
// (id, b -> c, id) with c constant on all of U (including b = 1).
DietzTriple dietz_constant(const UnitSubgroup& group, const FieldElement& c);

// ((O_K:J)/O_K x| (O_K^{x,+}/U)) x| A_U with an explicit group law. An element
// (beta, v, g) is the affine map x -> v g(x) + beta on K, taken modulo the deck
// group O_K x| U.
class AutGroup {
 public:
  struct Element {
    std::uint64_t context = 0;
    RatVector translation;  // coordinates reduced into [0, 1)
    IntVector unit_class;   // exponents over the unit basis, reduced mod the U lattice
    std::size_t galois = 0; // index into automorphisms()
    friend bool operator==(const Element&, const Element&) = default;
  };

  AutGroup(const UnitSubgroup& group, const UnitBasis& basis);

  const FieldPtr& field() const { return field_; }
  const FractionalIdeal& translation_lattice() const { return inverse_j_; }
  const std::vector<Automorphism>& automorphisms() const { return au_; }
  const IntMatrix& unit_lattice() const { return u_lattice_; }

  Int translation_count() const;  // |(O_K:J)/O_K|
  Int unit_class_count() const;   // |O_K^{x,+}/U|

  Element identity() const;
  // Throws NotSubgroup-style errors when translation is outside (O_K:J).
  Element make(const FieldElement& translation, std::span<const Int> unit_exponents, std::size_t galois) const;
  Element compose(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  Element random(std::mt19937_64& rng) const;

  FieldElement translation_element(const Element& x) const;
  FieldElement unit_representative(const Element& x) const;

  // Representatives of (O_K:J)/O_K as pure translations.
  std::vector<Element> pure_translations() const;

  // Triple induced on pi_1 by conjugation: alpha(a) = v g(a), beta(u) = (1 - g(u)) beta,
  // delta(u) = g(u).
  DietzTriple induced_dietz_triple(const Element& x) const;

 private:
  void check(const Element& x) const;
  IntVector reduce_unit_class(IntVector e) const;
  RatVector reduce_translation(const RatVector& c) const;
  FieldElement unit_power(std::span<const Int> e) const;

  std::uint64_t id_;
  FieldPtr field_;
  UnitSubgroup group_;
  UnitBasis basis_;
  IntegerIdeal j_;
  FractionalIdeal inverse_j_;
  std::vector<Automorphism> au_;
  std::vector<IntMatrix> au_on_units_;  // exponent action per automorphism (basis rows)
  IntMatrix u_lattice_;                 // HNF of U's exponent lattice
};

using AutElement = AutGroup::Element;

struct H1Report {
  FiniteAbelianGroup torsion;
  std::size_t free_rank = 0;
  std::size_t generator_bound = 0;  // s + 2t
  bool bound_holds = false;          // invariant factors + free rank <= s + 2t
  bool torsion_bound_holds = false;  // invariant factors of O_K/J(U) <= s + 2t
};

H1Report h1_structure(const UnitSubgroup& group);

struct GeometricInvariants {
  unsigned dimension = 0;
  unsigned b1 = 0;
  unsigned b2 = 0;
  Interval log_determinant;  // det(log sigma_j(u_i)) over the real places
  Interval volume_proxy;     // sqrt|disc| * |log_determinant|
  bool lck = false;
  std::string lck_basis;     // "vacuous" for t = 1, "numeric" otherwise
  unsigned precision_bits = 0;
};

GeometricInvariants geometric_invariants(const UnitSubgroup& group);

}  // namespace otarith
