#include "otarith/ray_class.hpp"

#include "otarith/errors.hpp"
#include "otarith/ot_aut.hpp"
#include "otarith/residue.hpp"

namespace otarith {

Modulus::Modulus(FieldPtr f, IntegerIdeal m0, std::vector<int> real_mult)
    : field(std::move(f)), finite_part(std::move(m0)), real_multiplicities(std::move(real_mult)) {
  if (finite_part.field() != field) fail(ErrorCode::MixedFields, "finite part belongs to another field");
  if (real_multiplicities.size() != field->signature().real)
    fail(ErrorCode::ShapeError, "one multiplicity per real place is required");
  for (int m : real_multiplicities)
    if (m != 0 && m != 1) fail(ErrorCode::ShapeError, "real multiplicities must be 0 or 1");
}

bool Modulus::all_real_marked() const {
  for (int m : real_multiplicities)
    if (m != 1) return false;
  return true;
}

Modulus trivial_modulus(const FieldPtr& field) {
  return Modulus(field, IntegerIdeal::unit(field), std::vector<int>(field->signature().real, 1));
}

RayUnitGroup ray_unit_group(const Modulus& m, const UnitBasis& basis, std::uint64_t cap) {
  if (basis.field != m.field) fail(ErrorCode::MixedFields, "unit basis of another field");
  if (basis.units.empty()) fail(ErrorCode::MissingUnitBasis, "empty unit basis");
  const std::size_t r = basis.rank();
  IntMatrix kernel;
  if (m.finite_part.is_unit_ideal()) {
    kernel = IntMatrix::identity(r);
  } else {
    // The basis is totally positive, so only the congruence condition cuts.
    ResidueUnitGroup g(m.finite_part, cap);
    const IntVector& orders = g.structure().elementary_divisors();
    if (orders.empty()) {
      kernel = IntMatrix::identity(r);
    } else {
      IntMatrix logs(0, orders.size());
      for (const auto& u : basis.units) logs.append_row(g.discrete_log(u));
      kernel = left_kernel_mod(logs, orders);
    }
  }
  std::vector<FieldElement> gens;
  for (std::size_t i = 0; i < kernel.rows(); ++i) gens.push_back(unit_from_exponents(basis.units, kernel.row(i)));
  Int index = ::abs(determinant(kernel));
  return RayUnitGroup{UnitSubgroup(m.field, std::move(gens)), std::move(kernel), std::move(index)};
}

Modulus build_exceptional_modulus(const UnitSubgroup& group) {
  AdmissibilityCertificate cert = is_admissible(group);
  if (!cert.admissible) fail(ErrorCode::NotAdmissible, "U is not admissible: " + cert.failing_clause);
  return Modulus(group.field(), j_ideal(group), std::vector<int>(group.field()->signature().real, 1));
}

ExceptionalVerdict is_exceptional(const Modulus& m, const UnitBasis& basis, std::uint64_t cap) {
  ExceptionalVerdict v;
  v.m0_hnf = m.finite_part.basis();
  if (!m.all_real_marked()) return v;
  RayUnitGroup ray = ray_unit_group(m, basis, cap);
  IntegerIdeal j = j_ideal(ray.group);
  v.j_hnf = j.basis();
  v.exceptional = j == m.finite_part;
  return v;
}

Int ray_ratio(const Modulus& m, const UnitBasis& basis, std::uint64_t cap) {
  if (!m.all_real_marked()) fail(ErrorCode::NotExceptional, "the ratio needs every real place marked");
  Int residue = residue_unit_count(m.finite_part, cap);
  RayUnitGroup ray = ray_unit_group(m, basis, cap);
  if (residue % ray.index != 0)
    fail(ErrorCode::NonIntegralRatio, residue.get_str() + " / " + ray.index.get_str() + " is not an integer");
  return residue / ray.index;
}

RayReport verify_inequality(const Modulus& m, const UnitBasis& basis, std::uint64_t cap) {
  ExceptionalVerdict ex = is_exceptional(m, basis, cap);
  if (!ex.exceptional) fail(ErrorCode::NotExceptional, "modulus is not exceptional");
  RayUnitGroup ray = ray_unit_group(m, basis, cap);
  AutFiltrationReport aut = aut_filtration(ray.group, basis);
  Int residue = residue_unit_count(m.finite_part, cap);
  if (residue % ray.index != 0)
    fail(ErrorCode::NonIntegralRatio, residue.get_str() + " / " + ray.index.get_str() + " is not an integer");
  RayReport rep{std::move(ray), 0, 0, residue, 0, true, aut.gr0.order(), Int(aut.gr2.size()), *aut.chi_f, 0, false, false};
  rep.unit_quotient_order = rep.ray_units.index;
  rep.full_unit_quotient_order = 2 * rep.ray_units.index;
  rep.ratio = residue / rep.ray_units.index;
  rep.rhs = rep.chi_f / Rational(rep.au_order);
  rep.inequality_holds = Rational(rep.ratio) <= rep.rhs;
  rep.equality = Rational(rep.ratio) == rep.rhs;
  return rep;
}

}  // namespace otarith
