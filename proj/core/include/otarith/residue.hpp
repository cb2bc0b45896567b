#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "otarith/ideal.hpp"

namespace otarith {

// O_K / I as a finite ring with machine-word arithmetic. Residues are
// coordinate vectors in the HNF fundamental domain 0 <= x_i < h_ii and are
// addressed by their mixed-radix index in [0, N(I)).
class ResidueRing {
 public:
  ResidueRing(const IntegerIdeal& ideal, std::uint64_t cap);

  std::size_t degree() const { return n_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t index_of(std::span<const std::int64_t> residue) const;
  std::vector<std::int64_t> residue_of(std::uint64_t index) const;
  std::vector<std::int64_t> reduce(const FieldElement& a) const;
  std::uint64_t index_of(const FieldElement& a) const { return index_of(reduce(a)); }
  FieldElement lift(std::uint64_t index) const;

  std::vector<std::int64_t> multiply(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;
  std::uint64_t multiply_index(std::uint64_t a, std::uint64_t b) const;
  // (x) + I == O_K, decided by inserting the rows of the multiplication
  // matrix of x into the HNF of I modulo N(I).
  bool is_unit(std::span<const std::int64_t> x) const;
  std::uint64_t one_index() const { return one_; }

 private:
  void reduce_in_place(std::vector<__int128>& v) const;

  FieldPtr field_;
  std::size_t n_ = 0;
  std::int64_t modulus_ = 0;                 // N(I)
  std::vector<std::int64_t> diag_;           // h_ii
  std::vector<std::int64_t> hnf_;            // n x n, mod N
  std::vector<std::int64_t> table_;          // n x n x n structure constants mod N
  std::uint64_t size_ = 0;
  std::uint64_t one_ = 0;
};

// (O_K/I)^x as Z/d1 x ... x Z/dk with a dense discrete-log table.
class ResidueUnitGroup {
 public:
  ResidueUnitGroup(const IntegerIdeal& ideal, std::uint64_t cap = kDefaultEnumCap);

  const FiniteAbelianGroup& structure() const { return structure_; }
  // Representatives of the standard generators (one per invariant factor).
  const std::vector<FieldElement>& generators() const { return generators_; }
  // Exponents (e_j mod d_j) of a residue coprime to I. Throws NotAUnitResidue.
  IntVector discrete_log(const FieldElement& a) const;
  const ResidueRing& ring() const { return *ring_; }
  Int unit_count() const { return structure_.order(); }

 private:
  std::shared_ptr<ResidueRing> ring_;
  FiniteAbelianGroup structure_;
  std::vector<FieldElement> generators_;
  std::size_t k_ = 0;
  // Dense over residue indices; k_ exponents per slot, slot_[i] == -1 for non-units.
  std::vector<std::int32_t> slot_;
  std::vector<std::int32_t> exps_;
};

inline ResidueUnitGroup residue_unit_group_structure(const IntegerIdeal& ideal, std::uint64_t cap = kDefaultEnumCap) {
  return ResidueUnitGroup(ideal, cap);
}

}  // namespace otarith
