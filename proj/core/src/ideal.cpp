#include "otarith/ideal.hpp"

#include <algorithm>
#include <sstream>

#include "otarith/errors.hpp"
#include "otarith/integers.hpp"
#include "otarith/residue.hpp"

namespace otarith {

// ---------------------------------------------------------------- groups

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(std::span<const Int> orders) {
  FiniteAbelianGroup g;
  if (orders.empty()) return g;
  for (const auto& o : orders)
    if (o <= 0) fail(ErrorCode::Internal, "cyclic order must be positive");
  IntMatrix d = IntMatrix::diagonal(orders);
  for (const auto& v : snf(d).divisors)
    if (v > 1) g.divisors_.push_back(v);
  return g;
}

Int FiniteAbelianGroup::order() const {
  Int o = 1;
  for (const auto& d : divisors_) o *= d;
  return o;
}

std::string FiniteAbelianGroup::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < divisors_.size(); ++i) os << (i ? ", " : "") << divisors_[i].get_str();
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- ideals

IntegerIdeal::IntegerIdeal(FieldPtr field, IntMatrix basis) : field_(std::move(field)) {
  const std::size_t n = field_->degree();
  if (basis.rows() != n || basis.cols() != n) fail(ErrorCode::ShapeError, "ideal basis must be n x n");
  Int det = ::abs(determinant(basis));
  if (det == 0) fail(ErrorCode::ZeroIdeal, "ideal basis is singular");
  basis_ = hnf_modular(basis, det);
}

IntegerIdeal IntegerIdeal::unit(const FieldPtr& field) { return IntegerIdeal(field, IntMatrix::identity(field->degree())); }

Int IntegerIdeal::norm() const {
  Int d = 1;
  for (std::size_t i = 0; i < basis_.rows(); ++i) d *= basis_(i, i);
  return d;
}

bool IntegerIdeal::is_unit_ideal() const { return norm() == 1; }

bool IntegerIdeal::contains(const FieldElement& a) const {
  if (a.field() != field_) fail(ErrorCode::MixedFields, "element of another field");
  if (!a.is_integral()) return false;
  IntVector r = reduce_mod_hnf(a.integer_coords(), basis_);
  return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

bool IntegerIdeal::contains(const IntegerIdeal& other) const {
  if (other.field_ != field_) fail(ErrorCode::MixedFields, "ideal of another field");
  for (std::size_t i = 0; i < other.basis_.rows(); ++i) {
    IntVector r = reduce_mod_hnf(other.basis_.row(i), basis_);
    if (!std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; })) return false;
  }
  return true;
}

std::vector<FieldElement> IntegerIdeal::basis_elements() const {
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(field_->element(basis_.row_vector(i)));
  return out;
}

std::string IntegerIdeal::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    os << (i ? ", " : "") << "[";
    for (std::size_t j = 0; j < basis_.cols(); ++j) os << (j ? ", " : "") << basis_(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool FractionalIdeal::contains(const FieldElement& a) const {
  return numerator.contains(a * Rational(denominator));
}

RatMatrix FractionalIdeal::basis() const {
  RatMatrix b = to_rational(numerator.basis());
  Rational inv(Int(1), denominator);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= inv;
  return b;
}

namespace {

void append_coords(IntMatrix& m, const FieldElement& a) {
  IntVector c = a.integer_coords();
  m.append_row(c);
}

}  // namespace

IntegerIdeal ideal_from_generators(const FieldPtr& field, std::span<const FieldElement> gens) {
  const std::size_t n = field->degree();
  IntMatrix rows(0, n);
  Int modulus = 0;
  for (const auto& g : gens) {
    if (g.field() != field) fail(ErrorCode::MixedFields, "generator of another field");
    if (g.is_zero()) continue;
    if (!g.is_integral()) fail(ErrorCode::NonIntegral, "ideal generator is not integral: " + g.to_string());
    // N(g) = g * (integral cofactor) lies in the ideal.
    if (modulus == 0) modulus = ::abs(norm(g).get_num());
    for (std::size_t i = 0; i < n; ++i) append_coords(rows, g * field->basis_element(i));
  }
  if (modulus == 0) fail(ErrorCode::ZeroIdeal, "all generators are zero");
  return IntegerIdeal(field, hnf_modular(rows, modulus));
}

IntegerIdeal principal_ideal(const FieldElement& a) {
  std::vector<FieldElement> g{a};
  return ideal_from_generators(a.field(), g);
}

Int ideal_norm(const IntegerIdeal& ideal) { return ideal.norm(); }

FiniteAbelianGroup quotient_structure(const IntegerIdeal& ideal) {
  IntVector d = snf(ideal.basis()).divisors;
  for (auto& x : d) x = ::abs(x);
  return FiniteAbelianGroup::from_cyclic_orders(d);
}

IntegerIdeal ideal_product(const IntegerIdeal& a, const IntegerIdeal& b) {
  if (a.field() != b.field()) fail(ErrorCode::MixedFields, "ideals of different fields");
  const auto& field = a.field();
  auto ea = a.basis_elements(), eb = b.basis_elements();
  IntMatrix rows(0, field->degree());
  for (const auto& x : ea)
    for (const auto& y : eb) append_coords(rows, x * y);
  return IntegerIdeal(field, hnf_modular(rows, a.norm() * b.norm()));
}

IntegerIdeal ideal_sum(const IntegerIdeal& a, const IntegerIdeal& b) {
  if (a.field() != b.field()) fail(ErrorCode::MixedFields, "ideals of different fields");
  return IntegerIdeal(a.field(), hnf_modular(a.basis().stacked(b.basis()), gcd(a.norm(), b.norm())));
}

IntegerIdeal ideal_power(const IntegerIdeal& a, unsigned k) {
  IntegerIdeal r = IntegerIdeal::unit(a.field());
  for (unsigned i = 0; i < k; ++i) r = ideal_product(r, a);
  return r;
}

bool coprime(const IntegerIdeal& a, const IntegerIdeal& b) { return ideal_sum(a, b).is_unit_ideal(); }

namespace {

IntMatrix trace_form(const NumberField& k) {
  const std::size_t n = k.degree();
  IntMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational tr = trace(k.basis_element(i) * k.basis_element(j));
      t(i, j) = t(j, i) = tr.get_num();
    }
  return t;
}

// HNF basis of the Z-span of rational rows.
RatMatrix rational_span(const std::vector<RatVector>& rows, std::size_t n) {
  Int d = 1;
  for (const auto& r : rows) d = lcm(d, common_denominator(r));
  IntMatrix m(0, n);
  for (const auto& r : rows) {
    IntVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = Rational(r[j] * d).get_num();
    m.append_row(v);
  }
  IntMatrix h = hnf_basis(m);
  RatMatrix out = to_rational(h);
  Rational inv(Int(1), d);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) *= inv;
  return out;
}

}  // namespace

FractionalIdeal inverse_fractional(const IntegerIdeal& ideal) {
  const auto& field = ideal.field();
  const NumberField& k = *field;
  const std::size_t n = k.degree();
  RatMatrix t = to_rational(trace_form(k));
  auto t_inv = inverse(t);
  if (!t_inv) fail(ErrorCode::Internal, "trace form is degenerate");

  // I * O^dual, spanned by products of basis elements.
  std::vector<RatVector> rows;
  auto ei = ideal.basis_elements();
  for (const auto& x : ei)
    for (std::size_t j = 0; j < n; ++j) rows.push_back((x * k.element(t_inv->row_vector(j))).coords());
  RatMatrix p = rational_span(rows, n);
  if (p.rows() != n) fail(ErrorCode::Internal, "product lattice is not full rank");

  // Dual lattice of rowspan(p): basis (T p^T)^-1.
  auto dual = inverse(t * p.transpose());
  if (!dual) fail(ErrorCode::Internal, "dual lattice computation failed");
  Int d0 = common_denominator(*dual);
  IntMatrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = Rational((*dual)(i, j) * d0).get_num();
  IntMatrix num = hnf_basis(scaled);
  Int g = gcd(d0, content(num));
  Int d = d0 / g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) num(i, j) /= g;

  FractionalIdeal out{IntegerIdeal(field, num), d};
  IntegerIdeal check = ideal_product(ideal, out.numerator);
  IntMatrix target(n, n);
  for (std::size_t i = 0; i < n; ++i) target(i, i) = d;
  if (!(check.basis() == target))
    fail(ErrorCode::NonInvertible, "I (O:I) != O; the order is not maximal at a prime below " + ideal.norm().get_str());
  return out;
}

// ---------------------------------------------------------------- primes

std::vector<PrimeIdealFactor> prime_splitting(const FieldPtr& field, const Int& p) {
  const NumberField& k = *field;
  if (!is_probable_prime(p)) fail(ErrorCode::Internal, p.get_str() + " is not prime");
  if (!k.theta().is_integral() || !power_order_is_p_maximal(k.min_poly(), p))
    fail(ErrorCode::IndexDivisor, p.get_str() + " divides the index of Z[theta]");
  if (!k.is_power_basis() && !dedekind_maximality_check(k, p))
    fail(ErrorCode::IndexDivisor, "order is not certified maximal at " + p.get_str());
  if (!mpz_fits_ulong_p(p.get_mpz_t()) || p.get_ui() >= (1UL << 62))
    fail(ErrorCode::IndexDivisor, "prime too large for the splitting path");
  const std::size_t n = k.degree();
  std::vector<PrimeIdealFactor> out;
  unsigned total = 0;
  for (const auto& [g, e] : factor_mod_p(k.min_poly(), p.get_ui())) {
    ZPoly gz = g.lift();
    FieldElement gt = k.zero();
    FieldElement th = k.theta();
    for (std::size_t i = gz.coeffs().size(); i-- > 0;) gt = gt * th + k.from_int(gz.coeffs()[i]);
    std::vector<FieldElement> gens{k.from_int(p), gt};
    IntegerIdeal prime = ideal_from_generators(field, gens);
    unsigned f = static_cast<unsigned>(g.degree());
    if (prime.norm() != pow(p, f)) fail(ErrorCode::Internal, "prime ideal has unexpected norm");
    out.push_back({prime, f, e});
    total += e * f;
  }
  if (total != n) fail(ErrorCode::Internal, "sum of e*f differs from the degree");
  return out;
}

std::vector<std::pair<IntegerIdeal, unsigned>> prime_factorization(const IntegerIdeal& ideal) {
  std::vector<std::pair<IntegerIdeal, unsigned>> out;
  const Int norm = ideal.norm();
  if (norm == 1) return out;
  for (const auto& [p, ep] : factor_integer(norm)) {
    (void)ep;
    for (const auto& pf : prime_splitting(ideal.field(), p)) {
      unsigned v = 0;
      IntegerIdeal power = pf.prime;
      while (power.contains(ideal)) {
        ++v;
        power = ideal_product(power, pf.prime);
      }
      if (v > 0) out.emplace_back(pf.prime, v);
    }
  }
  Int check = 1;
  for (const auto& [q, v] : out) check *= pow(q.norm(), v);
  if (check != norm) fail(ErrorCode::Internal, "prime factorization does not reproduce the norm");
  return out;
}

Int residue_unit_count_euler_phi(const IntegerIdeal& ideal) {
  Int count = 1;
  for (const auto& [q, v] : prime_factorization(ideal)) {
    Int nq = q.norm();
    count *= pow(nq, v - 1) * (nq - 1);
  }
  return count;
}

Int residue_unit_count_enumeration(const IntegerIdeal& ideal, std::uint64_t cap) {
  ResidueRing ring(ideal, cap);
  std::uint64_t count = 0;
  std::vector<std::int64_t> x;
  for (std::uint64_t i = 0; i < ring.size(); ++i) {
    x = ring.residue_of(i);
    if (ring.is_unit(x)) ++count;
  }
  return Int(static_cast<unsigned long>(count));
}

ResidueUnitCount residue_unit_count_detail(const IntegerIdeal& ideal, std::uint64_t cap) {
  ResidueUnitCount out;
  if (ideal.norm() <= Int(static_cast<unsigned long>(cap))) out.by_enumeration = residue_unit_count_enumeration(ideal, cap);
  try {
    out.by_euler_phi = residue_unit_count_euler_phi(ideal);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IndexDivisor) throw;
  }
  if (out.by_enumeration && out.by_euler_phi && *out.by_enumeration != *out.by_euler_phi)
    fail(ErrorCode::Internal, "residue unit counts disagree: " + out.by_enumeration->get_str() + " vs " +
                                  out.by_euler_phi->get_str());
  if (out.by_enumeration)
    out.count = *out.by_enumeration;
  else if (out.by_euler_phi)
    out.count = *out.by_euler_phi;
  else
    fail(ErrorCode::CapExceeded, "norm " + ideal.norm().get_str() + " exceeds the enumeration cap and the splitting path does not apply");
  return out;
}

Int residue_unit_count(const IntegerIdeal& ideal, std::uint64_t cap) { return residue_unit_count_detail(ideal, cap).count; }

}  // namespace otarith
