#include "otarith/ot_aut.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "otarith/errors.hpp"

namespace otarith {

namespace {

std::atomic<std::uint64_t> next_context{1};

bool in_span(const FieldElement& u, std::span<const FieldElement> gens) {
  try {
    exponent_vector(u, gens);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInSpan) return false;
    throw;
  }
}

FiniteAbelianGroup cokernel(const IntMatrix& m) {
  IntVector orders;
  for (const auto& d : snf(m).divisors) {
    if (d == 0) fail(ErrorCode::NotSubgroup, "infinite index");
    orders.push_back(::abs(d));
  }
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

Rational floor_frac(const Rational& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(f);
}

}  // namespace

std::vector<Automorphism> compute_au(const UnitSubgroup& group) {
  std::vector<Automorphism> out;
  for (const auto& g : group.field()->automorphisms()) {
    bool keep = true;
    for (const auto& u : group.generators())
      if (!in_span(g(u), group.generators())) {
        keep = false;
        break;
      }
    if (keep) out.push_back(g);
  }
  return out;
}

std::optional<Int> AutFiltrationReport::gr1_order() const {
  if (!gr1) return std::nullopt;
  return gr1->order();
}

AutFiltrationReport aut_filtration(const UnitSubgroup& group, const std::optional<UnitBasis>& basis) {
  AutFiltrationReport rep{IntegerIdeal::unit(group.field()), {}, std::nullopt, {}, std::nullopt, is_admissible(group)};
  if (!rep.admissibility.admissible) fail(ErrorCode::NotAdmissible, "U is not admissible: " + rep.admissibility.failing_clause);
  SimpleTypeResult st = is_simple_type(group);
  if (!st.simple)
    fail(ErrorCode::NotSimpleType, "U is not of simple type: Q(U) has dimension " + std::to_string(st.span_dimension) +
                                       " in a field of degree " + std::to_string(group.field()->degree()));
  rep.j = j_ideal(group);
  rep.gr0 = quotient_structure(rep.j);
  std::optional<UnitBasis> b = basis;
  if (!b && group.field()->signature() == Signature{1, 1}) b = rank1_fundamental_unit_search(group.field());
  if (b) rep.gr1 = cokernel(exponent_matrix(group.generators(), b->units));
  rep.gr2 = compute_au(group);
  if (rep.gr1)
    rep.chi_f = Rational(rep.gr0.order() * Int(rep.gr2.size())) / Rational(rep.gr1->order());
  return rep;
}

DietzVerdict verify_dietz_triple(const UnitSubgroup& group, const DietzTriple& triple, std::size_t random_words,
                                 std::uint64_t seed) {
  const NumberField& k = *group.field();
  const std::size_t n = k.degree();
  const std::size_t r = group.rank();
  if (triple.alpha.rows() != n || triple.alpha.cols() != n || triple.delta.rows() != r || triple.delta.cols() != r)
    return {false, "map shapes do not match the group"};
  if (r > 0 && ::abs(determinant(triple.delta)) != 1) return {false, "delta is not an automorphism of U"};

  std::vector<IntVector> words;
  words.emplace_back(r, Int(0));
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, Int(0));
    e[i] = 1;
    words.push_back(e);
    e[i] = -1;
    words.push_back(e);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      IntVector e(r, Int(0));
      e[i] += 1;
      e[j] += 1;
      words.push_back(e);
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (std::size_t w = 0; w < random_words && r > 0; ++w) {
    IntVector e(r);
    for (auto& x : e) x = dist(rng);
    words.push_back(e);
  }

  auto word_string = [](const IntVector& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? ", " : "") + e[i].get_str();
    return s + ")";
  };
  auto unit = [&](const IntVector& e) {
    return r == 0 ? k.one() : unit_from_exponents(group.generators(), e);
  };
  auto alpha = [&](const FieldElement& a) { return k.element(IntVector(a.integer_coords() * triple.alpha)); };

  std::vector<FieldElement> beta_of;
  std::vector<FieldElement> delta_of;
  for (const auto& e : words) {
    FieldElement b = triple.beta(e);
    if (!b.is_integral()) return {false, "beta" + word_string(e) + " is not integral"};
    beta_of.push_back(b);
    delta_of.push_back(unit(r == 0 ? e : IntVector(e * triple.delta)));
  }
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      IntVector prod(r);
      for (std::size_t c = 0; c < r; ++c) prod[c] = words[i][c] + words[j][c];
      FieldElement lhs = triple.beta(prod);
      FieldElement rhs = beta_of[i] + beta_of[j] * delta_of[i];
      if (!(lhs == rhs))
        return {false, "beta(b1 b2) != beta(b1) + beta(b2) delta(b1) at b1 = " + word_string(words[i]) +
                           ", b2 = " + word_string(words[j])};
    }
  std::vector<FieldElement> ring_elements;
  for (std::size_t i = 0; i < n; ++i) ring_elements.push_back(k.basis_element(i));
  ring_elements.push_back(k.one() + k.basis_element(n - 1) * Rational(2));
  for (const auto& a : ring_elements)
    for (std::size_t j = 0; j < words.size(); ++j) {
      FieldElement b = unit(words[j]);
      if (!(alpha(a * b) == alpha(a) * delta_of[j]))
        return {false, "alpha(a b) != alpha(a) delta(b) at a = " + a.to_string() + ", b = " + word_string(words[j])};
    }
  return {true, {}};
}

DietzTriple dietz_coboundary(const UnitSubgroup& group, const FieldElement& c0) {
  const std::size_t n = group.field()->degree();
  const std::size_t r = group.rank();
  std::vector<FieldElement> gens = group.generators();
  return DietzTriple{IntMatrix::identity(n),
                     [gens, c0](std::span<const Int> e) {
                       FieldElement u = gens.empty() ? c0.field()->one() : unit_from_exponents(gens, e);
                       return c0 * (u - c0.field()->one());
                     },
                     IntMatrix::identity(r)};
}

DietzTriple dietz_constant(const UnitSubgroup& group, const FieldElement& c) {
  return DietzTriple{IntMatrix::identity(group.field()->degree()), [c](std::span<const Int>) { return c; },
                     IntMatrix::identity(group.rank())};
}

AutGroup::AutGroup(const UnitSubgroup& group, const UnitBasis& basis)
    : id_(next_context++),
      field_(group.field()),
      group_(group),
      basis_(basis),
      j_(j_ideal(group)),
      inverse_j_(inverse_fractional(j_)) {
  if (basis.field != field_) fail(ErrorCode::MixedFields, "unit basis of another field");
  au_ = compute_au(group_);
  for (const auto& g : au_) {
    IntMatrix m(0, basis_.rank());
    for (const auto& b : basis_.units) m.append_row(exponent_vector(g(b), basis_.units));
    au_on_units_.push_back(std::move(m));
  }
  IntMatrix e;
  try {
    e = exponent_matrix(group_.generators(), basis_.units);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NotInSpan) fail(ErrorCode::NotSubgroup, "U is not inside the unit basis span");
    throw;
  }
  u_lattice_ = hnf_basis(e);
  if (u_lattice_.rows() != basis_.rank()) fail(ErrorCode::NotSubgroup, "U has infinite index");
}

Int AutGroup::translation_count() const {
  const std::size_t n = field_->degree();
  Int dn;
  mpz_pow_ui(dn.get_mpz_t(), inverse_j_.denominator.get_mpz_t(), n);
  return dn / inverse_j_.numerator.norm();
}

Int AutGroup::unit_class_count() const { return ::abs(determinant(u_lattice_)); }

void AutGroup::check(const Element& x) const {
  if (x.context != id_) fail(ErrorCode::ContextMismatch, "element belongs to another automorphism group");
}

FieldElement AutGroup::unit_power(std::span<const Int> e) const {
  if (e.empty()) return field_->one();
  return unit_from_exponents(basis_.units, e);
}

IntVector AutGroup::reduce_unit_class(IntVector e) const {
  if (e.empty()) return e;
  return reduce_mod_hnf(e, u_lattice_);
}

RatVector AutGroup::reduce_translation(const RatVector& c) const {
  RatVector out;
  for (const auto& q : c) out.push_back(floor_frac(q));
  return out;
}

AutGroup::Element AutGroup::identity() const {
  return Element{id_, RatVector(field_->degree(), Rational(0)), IntVector(basis_.rank(), Int(0)), 0};
}

AutGroup::Element AutGroup::make(const FieldElement& translation, std::span<const Int> unit_exponents,
                                 std::size_t galois) const {
  if (translation.field() != field_) fail(ErrorCode::MixedFields, "translation of another field");
  if (!inverse_j_.contains(translation)) fail(ErrorCode::NonIntegral, "translation is not in (O_K : J(U))");
  if (unit_exponents.size() != basis_.rank()) fail(ErrorCode::ShapeError, "unit exponent vector has the wrong length");
  if (galois >= au_.size()) fail(ErrorCode::ShapeError, "automorphism index out of range");
  IntVector e(unit_exponents.begin(), unit_exponents.end());
  IntVector reduced = reduce_unit_class(e);
  IntVector diff(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) diff[i] = e[i] - reduced[i];
  // x -> w v g(x) + beta is equivalent modulo U to x -> v g(x) + w^-1 beta.
  FieldElement beta = translation * otarith::inverse(unit_power(diff));
  return Element{id_, reduce_translation(beta.coords()), std::move(reduced), galois};
}

AutGroup::Element AutGroup::compose(const Element& x, const Element& y) const {
  check(x);
  check(y);
  const Automorphism& g1 = au_[x.galois];
  FieldElement beta = translation_element(x) + unit_representative(x) * g1(translation_element(y));
  IntVector e = y.unit_class * au_on_units_[x.galois];
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += x.unit_class[i];
  Automorphism g = g1.compose(au_[y.galois]);
  auto it = std::find(au_.begin(), au_.end(), g);
  if (it == au_.end()) fail(ErrorCode::Internal, "A_U is not closed under composition");
  return make(beta, e, static_cast<std::size_t>(it - au_.begin()));
}

AutGroup::Element AutGroup::inverse(const Element& x) const {
  check(x);
  const Automorphism& g = au_[x.galois];
  std::size_t h = au_.size();
  for (std::size_t i = 0; i < au_.size(); ++i)
    if (au_[i].compose(g).is_identity()) h = i;
  if (h == au_.size()) fail(ErrorCode::Internal, "automorphism without inverse in A_U");
  IntVector neg(x.unit_class.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -x.unit_class[i];
  IntVector e = neg.empty() ? neg : IntVector(neg * au_on_units_[h]);
  FieldElement vinv = otarith::inverse(unit_representative(x));
  FieldElement beta = -au_[h](vinv * translation_element(x));
  return make(beta, e, h);
}

AutGroup::Element AutGroup::random(std::mt19937_64& rng) const {
  const std::size_t n = field_->degree();
  const Int& d = inverse_j_.denominator;
  const IntMatrix& num = inverse_j_.numerator.basis();
  RatVector c(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    Int coef = Int(static_cast<unsigned long>(rng() % d.get_ui()));
    for (std::size_t j = 0; j < n; ++j) c[j] += Rational(coef * num(i, j), d);
  }
  IntVector e(basis_.rank());
  for (std::size_t i = 0; i < e.size(); ++i) {
    unsigned long span = u_lattice_(i, i).get_ui();
    e[i] = Int(static_cast<unsigned long>(rng() % std::max(span, 1UL)));
  }
  std::size_t g = static_cast<std::size_t>(rng() % au_.size());
  return make(field_->element(c), e, g);
}

FieldElement AutGroup::translation_element(const Element& x) const { return field_->element(x.translation); }

FieldElement AutGroup::unit_representative(const Element& x) const { return unit_power(x.unit_class); }

std::vector<AutGroup::Element> AutGroup::pure_translations() const {
  const std::size_t n = field_->degree();
  const Int& d = inverse_j_.denominator;
  const IntMatrix& num = inverse_j_.numerator.basis();
  const Int count = translation_count();
  if (count > Int(static_cast<unsigned long>(kDefaultEnumCap)))
    fail(ErrorCode::CapExceeded, "too many translation classes: " + count.get_str());
  std::set<IntVector> seen{IntVector(n, Int(0))};
  std::vector<IntVector> queue{IntVector(n, Int(0))};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v = queue[q];
      for (std::size_t j = 0; j < n; ++j) {
        v[j] += num(i, j);
        mpz_fdiv_r(v[j].get_mpz_t(), v[j].get_mpz_t(), d.get_mpz_t());
      }
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  std::vector<Element> out;
  for (const auto& v : seen) {
    RatVector c;
    for (const auto& x : v) c.push_back(Rational(x, d));
    out.push_back(make(field_->element(c), IntVector(basis_.rank(), Int(0)), 0));
  }
  return out;
}

DietzTriple AutGroup::induced_dietz_triple(const Element& x) const {
  check(x);
  const std::size_t n = field_->degree();
  const Automorphism& g = au_[x.galois];
  FieldElement v = unit_representative(x);
  FieldElement beta = translation_element(x);
  IntMatrix alpha(0, n);
  for (std::size_t i = 0; i < n; ++i) alpha.append_row((v * g(field_->basis_element(i))).integer_coords());
  IntMatrix delta(0, group_.rank());
  for (const auto& u : group_.generators()) delta.append_row(exponent_vector(g(u), group_.generators()));
  std::vector<FieldElement> gens = group_.generators();
  FieldPtr field = field_;
  return DietzTriple{std::move(alpha),
                     [gens, g, beta, field](std::span<const Int> e) {
                       FieldElement u = gens.empty() ? field->one() : unit_from_exponents(gens, e);
                       return (field->one() - g(u)) * beta;
                     },
                     std::move(delta)};
}

H1Report h1_structure(const UnitSubgroup& group) {
  AdmissibilityCertificate cert = is_admissible(group);
  if (!cert.admissible) fail(ErrorCode::NotAdmissible, "U is not admissible: " + cert.failing_clause);
  const Signature sig = group.field()->signature();
  H1Report rep;
  rep.torsion = quotient_structure(j_ideal(group));
  rep.free_rank = group.rank();
  rep.generator_bound = sig.real + 2 * sig.complex;
  rep.bound_holds = rep.torsion.invariant_factor_count() + rep.free_rank <= rep.generator_bound;
  rep.torsion_bound_holds = rep.torsion.invariant_factor_count() <= rep.generator_bound;
  return rep;
}

GeometricInvariants geometric_invariants(const UnitSubgroup& group) {
  const NumberField& k = *group.field();
  const Signature sig = k.signature();
  if (group.rank() != sig.real)
    fail(ErrorCode::NotAdmissible, "volume proxy needs rank s = " + std::to_string(sig.real));
  GeometricInvariants g;
  g.dimension = sig.real + sig.complex;
  g.b1 = sig.real;
  g.b2 = sig.real * (sig.real - 1) / 2;
  g.precision_bits = 128;
  auto emb = k.embeddings(g.precision_bits);
  const mpfr_prec_t prec = emb->prec;
  // Determinant by elimination on exact-shape interval rows (s is small).
  std::vector<std::vector<Interval>> m;
  for (const auto& u : group.generators()) {
    std::vector<Interval> row;
    for (const auto& pl : emb->places)
      if (pl.real) row.push_back(log(abs(embed_real(u, pl, prec))));
    m.push_back(std::move(row));
  }
  std::function<Interval(const std::vector<std::vector<Interval>>&)> det = [&](const auto& a) -> Interval {
    if (a.empty()) return Interval(1L, prec);
    Interval acc(0L, prec);
    for (std::size_t c = 0; c < a.size(); ++c) {
      std::vector<std::vector<Interval>> minor;
      for (std::size_t r = 1; r < a.size(); ++r) {
        std::vector<Interval> row;
        for (std::size_t j = 0; j < a.size(); ++j)
          if (j != c) row.push_back(a[r][j]);
        minor.push_back(std::move(row));
      }
      Interval t = a[0][c] * det(minor);
      acc = c % 2 ? acc - t : acc + t;
    }
    return acc;
  };
  g.log_determinant = det(m);
  g.volume_proxy = sqrt(Interval(Int(::abs(k.discriminant())), prec)) * abs(g.log_determinant);
  if (sig.complex <= 1) {
    g.lck = true;
    g.lck_basis = "vacuous";
  } else {
    g.lck = true;
    g.lck_basis = "numeric";
    for (const auto& u : group.generators()) {
      std::vector<Interval> mods;
      for (const auto& pl : emb->places)
        if (!pl.real) mods.push_back(embed(u, pl, prec).abs());
      for (std::size_t i = 1; i < mods.size(); ++i)
        if (!mods[i].overlaps(mods[0])) g.lck = false;
    }
  }
  return g;
}

}  // namespace otarith
