#include "otarith/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "otarith/errors.hpp"

namespace otarith {

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(FieldPtr field, RatVector coords) : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) fail(ErrorCode::Internal, "element without a field");
  if (coords_.size() != field_->degree()) fail(ErrorCode::ShapeError, "coordinate vector has the wrong length");
  for (auto& c : coords_) c.canonicalize();
}

namespace {

void same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) fail(ErrorCode::MixedFields, "elements belong to different fields");
}

}  // namespace

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_one() const { return *this == field_->one(); }

bool FieldElement::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return is_integer(q); });
}

IntVector FieldElement::integer_coords() const {
  IntVector v;
  v.reserve(coords_.size());
  for (const auto& q : coords_) {
    if (!is_integer(q)) fail(ErrorCode::NonIntegral, "element is not integral: " + to_string());
    v.push_back(q.get_num());
  }
  return v;
}

RatVector FieldElement::power_coords() const {
  if (field_->is_power_basis()) return coords_;
  return std::span<const Rational>(coords_) * field_->basis();
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  same_field(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  same_field(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  same_field(*this, o);
  const std::size_t n = coords_.size();
  RatVector r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.coords_[j] == 0) continue;
      Rational c = coords_[i] * o.coords_[j];
      const RatVector& t = field_->product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (t[k] != 0) r[k] += c * t[k];
    }
  }
  coords_ = std::move(r);
  return *this;
}

FieldElement operator*(FieldElement a, const Rational& s) {
  for (auto& c : a.coords_) c *= s;
  return a;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_ == b.field_ && a.coords_ == b.coords_;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i].get_str();
  os << "]";
  return os.str();
}

RatMatrix multiplication_matrix(const FieldElement& a) {
  const auto& k = *a.field();
  const std::size_t n = k.degree();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement p = a * k.basis_element(i);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = p.coords()[j];
  }
  return m;
}

Rational norm(const FieldElement& a) { return determinant(multiplication_matrix(a)); }

Rational trace(const FieldElement& a) {
  RatMatrix m = multiplication_matrix(a);
  Rational t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

FieldElement inverse(const FieldElement& a) {
  if (a.is_zero()) fail(ErrorCode::ZeroElement, "inverse of zero");
  auto x = solve_left(multiplication_matrix(a), a.field()->one().coords());
  if (!x) fail(ErrorCode::Internal, "multiplication matrix of a nonzero element is singular");
  return a.field()->element(std::move(*x));
}

FieldElement pow(const FieldElement& a, const Int& e) {
  if (e < 0) return pow(inverse(a), Int(-e));
  FieldElement r = a.field()->one();
  FieldElement b = a;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = r * r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = r * b;
  }
  return r;
}

FieldElement pow(const FieldElement& a, long long e) { return pow(a, Int(std::to_string(e))); }

ZPoly min_poly(const FieldElement& a) {
  const auto& k = *a.field();
  const std::size_t n = k.degree();
  RatMatrix powers(0, n);
  FieldElement p = k.one();
  for (std::size_t d = 0; d <= n; ++d) {
    RatVector pc = p.power_coords();
    if (d > 0) {
      auto c = solve_left(powers, pc);
      if (c) {
        std::vector<Rational> coeffs(d + 1);
        for (std::size_t i = 0; i < d; ++i) coeffs[i] = -(*c)[i];
        coeffs[d] = 1;
        return primitive_part(QPoly(std::move(coeffs)));
      }
    }
    powers.append_row(pc);
    p = p * a;
  }
  fail(ErrorCode::Internal, "no linear dependence among powers");
}

// ---------------------------------------------------------------- embeddings

std::size_t EmbeddingSet::real_count() const {
  return static_cast<std::size_t>(std::count_if(places.begin(), places.end(), [](const Place& p) { return p.real; }));
}

ComplexInterval embed(const FieldElement& a, const Place& place, mpfr_prec_t prec) {
  QPoly p(a.power_coords());
  ComplexInterval z = place.theta;
  if (z.re.precision() < prec) {
    z.re += Interval(prec);
    z.im += Interval(prec);
  }
  if (place.real) return ComplexInterval(evaluate(p, z.re), Interval(z.re.precision()));
  return evaluate(p, z);
}

Interval embed_real(const FieldElement& a, const Place& place, mpfr_prec_t prec) {
  if (!place.real) fail(ErrorCode::Internal, "embed_real on a complex place");
  return embed(a, place, prec).re;
}

bool is_totally_positive(const FieldElement& a) {
  if (a.is_zero()) fail(ErrorCode::ZeroElement, "sign of zero");
  const auto& k = *a.field();
  for (unsigned bits = 128; bits <= 1u << 16; bits *= 2) {
    auto emb = k.embeddings(bits);
    bool decided = true;
    for (const auto& pl : emb->places) {
      if (!pl.real) continue;
      Interval v = embed_real(a, pl, emb->prec);
      if (v.is_negative()) return false;
      if (!v.is_positive()) decided = false;
    }
    if (decided) return true;
  }
  fail(ErrorCode::Internal, "sign not decided at maximum precision");
}

// ---------------------------------------------------------------- automorphisms

bool Automorphism::is_identity() const { return image_ == image_.field()->theta(); }

FieldElement Automorphism::operator()(const FieldElement& a) const {
  if (a.field() != image_.field()) fail(ErrorCode::MixedFields, "automorphism applied to a foreign element");
  return a.field()->element(std::span<const Rational>(a.coords()) * matrix_);
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  return Automorphism((*this)(other.image_), other.matrix_ * matrix_);
}

// ---------------------------------------------------------------- field

namespace {

QPoly mulmod_power(const RatVector& a, const RatVector& b, const QPoly& f) {
  return rem(QPoly(a) * QPoly(b), f);
}

RatVector padded(const QPoly& p, std::size_t n) {
  RatVector v(n);
  for (std::size_t i = 0; i < n && i < p.coeffs().size(); ++i) v[i] = p.coeffs()[i];
  return v;
}

// All n roots as complex boxes: real roots, then each pair as (z, conj z).
std::vector<ComplexInterval> all_root_boxes(const RootIsolation& iso, mpfr_prec_t prec) {
  std::vector<ComplexInterval> out;
  for (const auto& r : iso.real_roots) out.push_back(r.box(prec));
  for (const auto& r : iso.complex_roots) {
    ComplexInterval b = r.box(prec);
    out.push_back(b);
    out.emplace_back(b.re, -b.im);
  }
  return out;
}

enum class SubsetVerdict { Irreducible, Reducible, Ambiguous };

SubsetVerdict subset_test(const ZPoly& f, unsigned bits) {
  const std::size_t n = static_cast<std::size_t>(f.degree());
  RootIsolation iso = isolate_roots(to_rational(f), bits);
  const mpfr_prec_t prec = bits + 64;
  std::vector<ComplexInterval> roots = all_root_boxes(iso, prec);
  bool ambiguous = false;
  std::vector<std::size_t> idx;
  for (std::size_t d = 1; 2 * d <= n; ++d) {
    idx.resize(d);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<ComplexInterval> c{ComplexInterval(Interval(1L, prec), Interval(prec))};
      for (std::size_t i : idx) {
        std::vector<ComplexInterval> next(c.size() + 1, ComplexInterval(prec));
        for (std::size_t k = 0; k < c.size(); ++k) {
          next[k + 1] += c[k];
          next[k] -= roots[i] * c[k];
        }
        c = std::move(next);
      }
      bool candidate = true;
      std::vector<Int> coeffs;
      for (const auto& ck : c) {
        if (!ck.im.contains_zero()) {
          candidate = false;
          break;
        }
        Rational lo = ck.re.lo_rational(), hi = ck.re.hi_rational();
        Int a = floor(lo);
        if (Rational(a) < lo) a += 1;
        Int b = floor(hi);
        if (a > b) {
          candidate = false;
          break;
        }
        if (a != b) ambiguous = true;
        coeffs.push_back(a);
      }
      if (candidate && divides(ZPoly(coeffs), f)) return SubsetVerdict::Reducible;
      // next combination
      std::size_t k = d;
      while (k > 0 && idx[k - 1] == n - d + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return ambiguous ? SubsetVerdict::Ambiguous : SubsetVerdict::Irreducible;
}

void check_irreducible(const ZPoly& f) {
  if (f.coeff(0) == 0) fail(ErrorCode::Reducible, "x divides " + f.to_string());
  if (gcd(to_rational(f), to_rational(f.derivative())).degree() > 0)
    fail(ErrorCode::Reducible, f.to_string() + " has a repeated factor");
  for (unsigned bits = 128; bits <= 8192; bits *= 2) {
    switch (subset_test(f, bits)) {
      case SubsetVerdict::Reducible:
        fail(ErrorCode::Reducible, f.to_string() + " has a proper factor over Q");
      case SubsetVerdict::Irreducible:
        return;
      case SubsetVerdict::Ambiguous:
        break;
    }
  }
  fail(ErrorCode::Internal, "irreducibility not decided at maximum precision");
}

}  // namespace

FieldPtr NumberField::build(const ZPoly& min_poly, std::optional<RatMatrix> integral_basis) {
  std::shared_ptr<NumberField> k(new NumberField());
  k->init(min_poly, std::move(integral_basis));
  return k;
}

void NumberField::init(const ZPoly& f, std::optional<RatMatrix> basis) {
  if (f.degree() < 2) fail(ErrorCode::ShapeError, "defining polynomial must have degree >= 2");
  if (f.leading() != 1) fail(ErrorCode::NonMonic, "defining polynomial is not monic: " + f.to_string());
  check_irreducible(f);
  f_ = f;
  n_ = static_cast<std::size_t>(f.degree());
  const QPoly fq = to_rational(f);

  SturmSequence st(fq);
  sig_.real = static_cast<unsigned>(st.count_all());
  sig_.complex = static_cast<unsigned>((n_ - sig_.real) / 2);

  if (basis) {
    if (basis->rows() != n_ || basis->cols() != n_) fail(ErrorCode::InvalidBasis, "integral basis must be n x n");
    auto inv = inverse(*basis);
    if (!inv) fail(ErrorCode::InvalidBasis, "integral basis is singular");
    basis_ = *basis;
    basis_inv_ = *inv;
  } else {
    basis_ = RatMatrix::identity(n_);
    basis_inv_ = basis_;
  }
  power_basis_ = (basis_ == RatMatrix::identity(n_));

  table_.assign(n_ * n_, RatVector(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) {
      RatVector pc = padded(mulmod_power(basis_.row_vector(i), basis_.row_vector(j), fq), n_);
      RatVector c = power_basis_ ? pc : std::span<const Rational>(pc) * basis_inv_;
      for (const auto& q : c)
        if (!is_integer(q)) fail(ErrorCode::InvalidBasis, "basis is not closed under multiplication");
      table_[i * n_ + j] = c;
      table_[j * n_ + i] = c;
    }
  RatVector one_power(n_);
  one_power[0] = 1;
  RatVector one = power_basis_ ? one_power : std::span<const Rational>(one_power) * basis_inv_;
  for (const auto& q : one)
    if (!is_integer(q)) fail(ErrorCode::InvalidBasis, "basis lattice does not contain 1");

  poly_disc_ = otarith::discriminant(f);
  Rational det = determinant(basis_);
  Rational d = Rational(poly_disc_) * det * det;
  if (!is_integer(d)) fail(ErrorCode::InvalidBasis, "order discriminant is not an integer");
  disc_ = d.get_num();
}

Rational NumberField::power_order_index() const { return Rational(1) / ::abs(determinant(basis_)); }

FieldElement NumberField::element(RatVector coords) const { return FieldElement(shared_from_this(), std::move(coords)); }

FieldElement NumberField::element(const IntVector& coords) const {
  RatVector c(coords.begin(), coords.end());
  return element(std::move(c));
}

FieldElement NumberField::from_power_coords(const RatVector& power) const {
  if (power.size() != n_) fail(ErrorCode::ShapeError, "power coordinates have the wrong length");
  if (power_basis_) return element(power);
  return element(std::span<const Rational>(power) * basis_inv_);
}

FieldElement NumberField::from_int(const Int& v) const {
  RatVector p(n_);
  p[0] = v;
  return from_power_coords(p);
}

FieldElement NumberField::zero() const { return element(RatVector(n_)); }
FieldElement NumberField::one() const { return from_int(1); }

FieldElement NumberField::theta() const {
  RatVector p(n_);
  p[1] = 1;
  return from_power_coords(p);
}

FieldElement NumberField::basis_element(std::size_t i) const {
  RatVector c(n_);
  c.at(i) = 1;
  return element(std::move(c));
}

std::shared_ptr<const EmbeddingSet> NumberField::embeddings(unsigned bits) const {
  bits = std::max(bits, 32u);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = embedding_cache_.lower_bound(bits);
  if (it != embedding_cache_.end()) return it->second;
  auto set = std::make_shared<EmbeddingSet>();
  set->bits = bits;
  set->prec = bits + 64;
  RootIsolation iso = isolate_roots(to_rational(f_), bits);
  for (const auto& r : iso.real_roots) set->places.push_back(Place{true, r, r.box(set->prec)});
  for (const auto& r : iso.complex_roots) set->places.push_back(Place{false, r, r.box(set->prec)});
  embedding_cache_[bits] = set;
  return set;
}

const std::vector<Automorphism>& NumberField::automorphisms() const {
  std::call_once(aut_once_, [this] { automorphisms_ = field_automorphisms(shared_from_this()); });
  return automorphisms_;
}

namespace {

using CLD = std::complex<long double>;

std::optional<std::vector<std::vector<CLD>>> invert(std::vector<std::vector<CLD>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<CLD>> inv(n, std::vector<CLD>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    if (std::abs(a[p][k]) == 0) return std::nullopt;
    std::swap(a[k], a[p]);
    std::swap(inv[k], inv[p]);
    CLD piv = a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] /= piv;
      inv[k][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      CLD f = a[i][k];
      if (f == CLD(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

CLD to_cld(const ComplexInterval& z) { return {z.re.mid_long_double(), z.im.mid_long_double()}; }

}  // namespace

std::vector<Automorphism> field_automorphisms(const FieldPtr& field) {
  const auto& k = *field;
  const std::size_t n = k.degree();
  const ZPoly& f = k.min_poly();
  auto emb = k.embeddings(128);
  std::vector<CLD> r;
  std::vector<std::size_t> conj;
  for (const auto& pl : emb->places) {
    if (pl.real) {
      conj.push_back(r.size());
      r.push_back(to_cld(pl.theta));
    }
  }
  for (const auto& pl : emb->places) {
    if (pl.real) continue;
    CLD z = to_cld(pl.theta);
    conj.push_back(r.size() + 1);
    conj.push_back(r.size());
    r.push_back(z);
    r.push_back(std::conj(z));
  }

  std::vector<std::vector<CLD>> v(n, std::vector<CLD>(n));
  for (std::size_t i = 0; i < n; ++i) {
    CLD p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      v[i][j] = p;
      p *= r[i];
    }
  }
  auto vinv = invert(v);
  if (!vinv) fail(ErrorCode::Internal, "Vandermonde system is singular");

  // Power coordinates of an integral element have denominators dividing disc(f).
  const Int scale = ::abs(k.poly_discriminant());
  const long double scale_ld = static_cast<long double>(scale.get_d());

  std::vector<FieldElement> images;
  images.push_back(k.theta());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool compatible = true;
    for (std::size_t i = 0; i < n && compatible; ++i)
      if (perm[conj[i]] != conj[perm[i]]) compatible = false;
    if (!compatible) continue;
    bool is_id = true;
    for (std::size_t i = 0; i < n; ++i) is_id = is_id && perm[i] == i;
    if (is_id) continue;
    RatVector pc(n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      CLD c = 0;
      for (std::size_t i = 0; i < n; ++i) c += (*vinv)[j][i] * r[perm[i]];
      long double scaled = c.real() * scale_ld;
      long double rounded = std::nearbyint(scaled);
      if (std::fabs(scaled - rounded) > 0.25L || std::fabs(c.imag()) * scale_ld > 0.25L) ok = false;
      Int num(std::to_string(static_cast<long long>(rounded)));
      pc[j] = Rational(num, scale);
      pc[j].canonicalize();
    }
    if (!ok) continue;
    FieldElement beta = k.from_power_coords(pc);
    // Exact check f(beta) == 0.
    FieldElement acc = k.zero();
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * beta + k.from_int(f.coeffs()[i]);
    if (!acc.is_zero()) continue;
    if (std::find(images.begin(), images.end(), beta) == images.end()) images.push_back(beta);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Automorphism> out;
  for (const auto& beta : images) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      RatVector p = k.basis().row_vector(i);
      FieldElement acc = k.zero();
      for (std::size_t d = n; d-- > 0;) acc = acc * beta + k.one() * p[d];
      for (std::size_t j = 0; j < n; ++j) m(i, j) = acc.coords()[j];
    }
    out.emplace_back(beta, std::move(m));
  }
  return out;
}

bool power_order_is_p_maximal(const ZPoly& f, const Int& p) {
  const Int disc = discriminant(f);
  if (!mpz_divisible_p(disc.get_mpz_t(), Int(p * p).get_mpz_t())) return true;
  if (!mpz_fits_ulong_p(p.get_mpz_t()) || p.get_ui() >= (1UL << 62)) fail(ErrorCode::Internal, "prime too large");
  const std::uint64_t q = p.get_ui();
  auto factors = factor_mod_p(f, q);
  PolyModP g(q, std::vector<std::uint64_t>{1});
  PolyModP h(q, std::vector<std::uint64_t>{1});
  for (const auto& [gi, e] : factors) {
    g = g * gi;
    for (unsigned k = 1; k < e; ++k) h = h * gi;
  }
  ZPoly gz = g.lift(), hz = h.lift();
  ZPoly diff = gz * hz - f;
  std::vector<Int> fc;
  for (const auto& c : diff.coeffs()) {
    if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) fail(ErrorCode::Internal, "Dedekind lift is not exact");
    fc.push_back(c / p);
  }
  PolyModP big_f(q, ZPoly(fc));
  PolyModP d = PolyModP::gcd(PolyModP::gcd(big_f, g), h);
  return d.degree() == 0;
}

bool dedekind_maximality_check(const NumberField& field, const Int& p) {
  if (field.is_power_basis()) return power_order_is_p_maximal(field.min_poly(), p);
  return !mpz_divisible_p(field.discriminant().get_mpz_t(), Int(p * p).get_mpz_t());
}

}  // namespace otarith
