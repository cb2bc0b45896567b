#pragma once

#include <mpfr.h>

#include <string>

#include "otarith/bigint.hpp"

namespace otarith {

// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
// the lower endpoint down and the upper endpoint up, so the result encloses
// the exact value of the operation applied to any points of the operands.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(const Int& v, mpfr_prec_t prec);
  Interval(const Rational& v, mpfr_prec_t prec);
  Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
  Interval(long v, mpfr_prec_t prec);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }

  double lo_double() const;
  double hi_double() const;
  double mid_double() const;
  long double mid_long_double() const;
  // hi - lo, rounded up.
  double width() const;

  bool contains_zero() const;
  bool is_positive() const;  // lo > 0
  bool is_negative() const;  // hi < 0
  bool contains(const Rational& q) const;
  bool overlaps(const Interval& other) const;
  // Certified strict comparison: every point of *this is below every point of other.
  bool certainly_less(const Interval& other) const;
  bool certainly_less(double v) const;

  // Exact rational enclosure of the endpoints.
  Rational lo_rational() const;
  Rational hi_rational() const;

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  Interval operator-() const;

  friend Interval abs(const Interval& a);
  friend Interval sqr(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval cos(const Interval& a);
  friend Interval sin(const Interval& a);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval hull(const Interval& a, const Interval& b);
  friend Interval pow(const Interval& a, unsigned long e);

  static Interval pi(mpfr_prec_t prec);

  // Decimal endpoint strings with `digits` significant digits; lo rounded
  // toward -inf, hi toward +inf, so the printed pair still encloses the value.
  std::string lo_string(int digits = 25) const;
  std::string hi_string(int digits = 25) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

// Rectangle in the complex plane.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  ComplexInterval& operator+=(const ComplexInterval& o);
  ComplexInterval& operator-=(const ComplexInterval& o);
  ComplexInterval& operator*=(const ComplexInterval& o);
  friend ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
  friend ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
  friend ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b) { return a *= b; }

  Interval abs2() const;
  Interval abs() const;
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool overlaps(const ComplexInterval& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
};

// log(|value|) enclosure for a nonzero integer.
Interval log_abs(const Int& value, mpfr_prec_t prec);

}  // namespace otarith
