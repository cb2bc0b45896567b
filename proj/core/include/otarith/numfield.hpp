#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "otarith/bigint.hpp"
#include "otarith/interval.hpp"
#include "otarith/linalg.hpp"
#include "otarith/poly.hpp"
#include "otarith/roots.hpp"

namespace otarith {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

struct Signature {
  unsigned real = 0;     // s
  unsigned complex = 0;  // t, conjugate pairs
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Element of K stored as rational coordinates over the field's integral basis.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, RatVector coords);

  const FieldPtr& field() const { return field_; }
  const RatVector& coords() const { return coords_; }
  bool valid() const { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  bool is_integral() const;
  // Throws NonIntegral when a coordinate is not an integer.
  IntVector integer_coords() const;
  // Coordinates over the power basis 1, theta, ..., theta^(n-1).
  RatVector power_coords() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator*(FieldElement a, const Rational& s);
  FieldElement operator-() const;

  // Same field (by identity) and equal coordinates.
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

 private:
  FieldPtr field_;
  RatVector coords_;
};

FieldElement inverse(const FieldElement& a);
// Repeated squaring; negative exponents go through the inverse.
FieldElement pow(const FieldElement& a, long long e);
FieldElement pow(const FieldElement& a, const Int& e);

// Rows are the coordinates of a * b_i for the integral basis b_i.
RatMatrix multiplication_matrix(const FieldElement& a);
Rational norm(const FieldElement& a);
Rational trace(const FieldElement& a);

// Primitive integer minimal polynomial (monic when a is integral).
ZPoly min_poly(const FieldElement& a);

// Throws ZeroElement for a == 0.
bool is_totally_positive(const FieldElement& a);

// One archimedean place: real places first (ascending root), then one
// representative per complex pair, the embedding with Im(sigma(theta)) > 0.
struct Place {
  bool real = true;
  RootEnclosure root;
  ComplexInterval theta;  // enclosure of sigma(theta)
};

struct EmbeddingSet {
  unsigned bits = 0;
  mpfr_prec_t prec = 0;
  std::vector<Place> places;
  std::size_t real_count() const;
};

// Enclosure of sigma_place(a).
ComplexInterval embed(const FieldElement& a, const Place& place, mpfr_prec_t prec);
Interval embed_real(const FieldElement& a, const Place& place, mpfr_prec_t prec);

// Field automorphism, stored as the Q-linear map on integral-basis coordinates.
class Automorphism {
 public:
  Automorphism() = default;
  Automorphism(FieldElement image_of_theta, RatMatrix matrix)
      : image_(std::move(image_of_theta)), matrix_(std::move(matrix)) {}

  const FieldElement& image_of_theta() const { return image_; }
  const RatMatrix& matrix() const { return matrix_; }
  bool is_identity() const;
  FieldElement operator()(const FieldElement& a) const;
  // (*this o other)(x) = (*this)(other(x))
  Automorphism compose(const Automorphism& other) const;
  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.image_ == b.image_; }

 private:
  FieldElement image_;
  RatMatrix matrix_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // Validates the polynomial (monic, degree >= 2, irreducible) and the basis
  // (rows = basis elements in power-basis coordinates; must span an order).
  static FieldPtr build(const ZPoly& min_poly, std::optional<RatMatrix> integral_basis = std::nullopt);

  std::size_t degree() const { return n_; }
  const ZPoly& min_poly() const { return f_; }
  Signature signature() const { return sig_; }
  const RatMatrix& basis() const { return basis_; }
  const RatMatrix& basis_inverse() const { return basis_inv_; }
  bool is_power_basis() const { return power_basis_; }
  // Discriminant of the order spanned by the integral basis.
  const Int& discriminant() const { return disc_; }
  const Int& poly_discriminant() const { return poly_disc_; }
  // [order : Z[theta]] as a rational (1 for the power basis).
  Rational power_order_index() const;

  FieldElement element(RatVector coords) const;
  FieldElement element(const IntVector& coords) const;
  FieldElement from_power_coords(const RatVector& power) const;
  FieldElement from_int(const Int& v) const;
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement theta() const;
  FieldElement basis_element(std::size_t i) const;

  // coords(b_i * b_j); integral for an order.
  const RatVector& product(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

  // Certified embeddings with enclosure width <= 2^-bits (bits >= 32).
  std::shared_ptr<const EmbeddingSet> embeddings(unsigned bits = 128) const;

  // All automorphisms of K/Q, identity first.
  const std::vector<Automorphism>& automorphisms() const;

 private:
  NumberField() = default;
  void init(const ZPoly& f, std::optional<RatMatrix> basis);

  std::size_t n_ = 0;
  ZPoly f_;
  Signature sig_;
  RatMatrix basis_, basis_inv_;
  bool power_basis_ = true;
  Int disc_, poly_disc_;
  std::vector<RatVector> table_;

  mutable std::mutex cache_mutex_;
  mutable std::map<unsigned, std::shared_ptr<const EmbeddingSet>> embedding_cache_;
  mutable std::once_flag aut_once_;
  mutable std::vector<Automorphism> automorphisms_;
};

std::vector<Automorphism> field_automorphisms(const FieldPtr& field);

// Dedekind's criterion for Z[theta] at p. For a supplied non-power basis the
// answer is only certified when p^2 does not divide the order discriminant;
// otherwise false is returned and maximality is left to the ideal-inversion guard.
bool dedekind_maximality_check(const NumberField& field, const Int& p);

// Dedekind's criterion for the power order Z[theta] at p, regardless of basis.
bool power_order_is_p_maximal(const ZPoly& f, const Int& p);

}  // namespace otarith
