#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "otarith/bigint.hpp"
#include "otarith/interval.hpp"

namespace otarith {

// Univariate polynomial, coefficients ascending (constant term first). The
// coefficient vector never has a trailing zero; the zero polynomial is empty.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs);
  Polynomial(std::initializer_list<T> coeffs) : Polynomial(std::vector<T>(coeffs)) {}

  static Polynomial monomial(const T& c, std::size_t degree);
  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& leading() const { return c_.back(); }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }

  T operator()(const T& x) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const T& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<T> c_;
};

using ZPoly = Polynomial<Int>;
using QPoly = Polynomial<Rational>;

QPoly to_rational(const ZPoly& f);
// Primitive integer multiple with positive leading coefficient.
ZPoly primitive_part(const QPoly& f);
Int content(const ZPoly& f);

// Division with remainder over Q.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly rem(const QPoly& a, const QPoly& b);
// Monic gcd over Q (zero if both zero).
QPoly gcd(const QPoly& a, const QPoly& b);
// True when g divides f exactly in Z[x] (g primitive).
bool divides(const ZPoly& g, const ZPoly& f);

// Squarefree decomposition over Q: pairs (factor, multiplicity), factors monic.
std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& f);

// Resultant via the Sylvester determinant.
Int resultant(const ZPoly& f, const ZPoly& g);
// (-1)^(n(n-1)/2) Res(f, f') / lc(f).
Int discriminant(const ZPoly& f);

// Sturm sequence of a squarefree polynomial and sign-change counting.
class SturmSequence {
 public:
  explicit SturmSequence(const QPoly& f);
  // Number of distinct real roots in (a, b].
  std::size_t count(const Rational& a, const Rational& b) const;
  std::size_t count_all() const;

 private:
  std::size_t variations_at(const Rational& x) const;
  std::size_t variations_at_infinity(int sign) const;
  std::vector<QPoly> seq_;
};

// Upper bound on the modulus of every complex root (Cauchy).
Rational root_bound(const QPoly& f);

// Interval Horner evaluation of an integer/rational polynomial.
ComplexInterval evaluate(const QPoly& f, const ComplexInterval& z);
Interval evaluate(const QPoly& f, const Interval& x);

// Polynomials over the prime field F_p, p < 2^62.
class PolyModP {
 public:
  PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  PolyModP(std::uint64_t p, const ZPoly& f);

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t leading() const { return c_.back(); }
  ZPoly lift() const;  // coefficients in [0, p)

  PolyModP monic() const;
  PolyModP derivative() const;
  PolyModP operator+(const PolyModP& o) const;
  PolyModP operator-(const PolyModP& o) const;
  PolyModP operator*(const PolyModP& o) const;
  friend bool operator==(const PolyModP& a, const PolyModP& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  static std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b);
  static PolyModP gcd(PolyModP a, PolyModP b);
  // base^e mod m for an arbitrary-precision exponent.
  static PolyModP powmod(const PolyModP& base, const Int& e, const PolyModP& m);

 private:
  void normalize();
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

// Complete factorization over F_p into monic irreducibles with multiplicities,
// sorted by (degree, coefficients). Deterministic.
std::vector<std::pair<PolyModP, unsigned>> factor_mod_p(const ZPoly& f, std::uint64_t p);

}  // namespace otarith
