#include "otarith/interval.hpp"

#include <algorithm>
#include <cstdlib>

#include "otarith/errors.hpp"

namespace otarith {

namespace {

mpfr_prec_t join(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

Rational exact(const __mpfr_struct* x) {
  Int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational q(m);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

std::string format(const __mpfr_struct* x, int digits, bool down) {
  char* buf = nullptr;
  if (down)
    mpfr_asprintf(&buf, "%.*RDg", digits, x);
  else
    mpfr_asprintf(&buf, "%.*RUg", digits, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Int& v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (lo > hi) fail(ErrorCode::Internal, "interval with lo > hi");
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_double() const { return static_cast<double>(mid_long_double()); }

long double Interval::mid_long_double() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  long double r = mpfr_get_ld(m, MPFR_RNDN);
  mpfr_clear(m);
  return r;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, precision());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double r = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return r;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

bool Interval::certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
bool Interval::certainly_less(double v) const { return mpfr_cmp_d(hi_, v) < 0; }

Rational Interval::lo_rational() const { return exact(lo_); }
Rational Interval::hi_rational() const { return exact(hi_); }

Interval& Interval::operator+=(const Interval& o) {
  mpfr_prec_t p = join(*this, o);
  mpfr_prec_round(lo_, p, MPFR_RNDD);
  mpfr_prec_round(hi_, p, MPFR_RNDU);
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  mpfr_prec_t p = join(*this, o);
  mpfr_prec_round(lo_, p, MPFR_RNDD);
  mpfr_prec_round(hi_, p, MPFR_RNDU);
  // [a, b] - [c, d] = [a - d, b - c]; o may alias *this.
  mpfr_t nlo;
  mpfr_init2(nlo, p);
  mpfr_sub(nlo, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
  mpfr_swap(lo_, nlo);
  mpfr_clear(nlo);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  mpfr_prec_t p = join(*this, o);
  mpfr_t t, nlo, nhi;
  mpfr_inits2(p, t, nlo, nhi, static_cast<mpfr_ptr>(nullptr));
  const __mpfr_struct* xs[2] = {lo_, hi_};
  const __mpfr_struct* ys[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, nlo)) mpfr_set(nlo, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, nhi)) mpfr_set(nhi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set_prec(lo_, p);
  mpfr_set_prec(hi_, p);
  mpfr_swap(lo_, nlo);
  mpfr_swap(hi_, nhi);
  mpfr_clears(t, nlo, nhi, static_cast<mpfr_ptr>(nullptr));
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) fail(ErrorCode::Internal, "interval division by an interval containing zero");
  mpfr_prec_t p = join(*this, o);
  mpfr_t t, nlo, nhi;
  mpfr_inits2(p, t, nlo, nhi, static_cast<mpfr_ptr>(nullptr));
  const __mpfr_struct* xs[2] = {lo_, hi_};
  const __mpfr_struct* ys[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, nlo)) mpfr_set(nlo, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, nhi)) mpfr_set(nhi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set_prec(lo_, p);
  mpfr_set_prec(hi_, p);
  mpfr_swap(lo_, nlo);
  mpfr_swap(hi_, nhi);
  mpfr_clears(t, nlo, nhi, static_cast<mpfr_ptr>(nullptr));
  return *this;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(a.precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_t n;
  mpfr_init2(n, a.precision());
  mpfr_neg(n, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, n, a.hi_, MPFR_RNDU);
  mpfr_clear(n);
  return r;
}

Interval sqr(const Interval& a) {
  Interval m = abs(a);
  Interval r(a.precision());
  mpfr_sqr(r.lo_, m.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, m.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.hi_) < 0) fail(ErrorCode::Internal, "sqrt of a negative interval");
  Interval r(a.precision());
  if (mpfr_sgn(a.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (!a.is_positive()) fail(ErrorCode::Internal, "log of an interval not bounded away from zero");
  Interval r(a.precision());
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.precision());
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

namespace {

// f(mid) +- radius for a 1-Lipschitz f, clipped to [-1, 1].
template <class F>
Interval lipschitz_trig(const Interval& a, F f) {
  mpfr_prec_t p = a.precision();
  mpfr_t mid, rad, t;
  mpfr_inits2(p + 2, mid, rad, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(mid, a.lo(), a.hi(), MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  mpfr_sub(rad, a.hi(), mid, MPFR_RNDU);
  mpfr_sub(t, mid, a.lo(), MPFR_RNDU);
  mpfr_max(rad, rad, t, MPFR_RNDU);

  Interval r(p);
  mpfr_t lo, hi;
  mpfr_inits2(p, lo, hi, static_cast<mpfr_ptr>(nullptr));
  f(lo, mid, MPFR_RNDD);
  f(hi, mid, MPFR_RNDU);
  mpfr_sub(lo, lo, rad, MPFR_RNDD);
  mpfr_add(hi, hi, rad, MPFR_RNDU);
  if (mpfr_cmp_si(lo, -1) < 0) mpfr_set_si(lo, -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi, 1) > 0) mpfr_set_si(hi, 1, MPFR_RNDU);
  mpfr_set(const_cast<__mpfr_struct*>(r.lo()), lo, MPFR_RNDD);
  mpfr_set(const_cast<__mpfr_struct*>(r.hi()), hi, MPFR_RNDU);
  mpfr_clears(mid, rad, t, lo, hi, static_cast<mpfr_ptr>(nullptr));
  return r;
}

}  // namespace

Interval cos(const Interval& a) {
  return lipschitz_trig(a, [](mpfr_ptr out, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_cos(out, x, rnd); });
}

Interval sin(const Interval& a) {
  return lipschitz_trig(a, [](mpfr_ptr out, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_sin(out, x, rnd); });
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, unsigned long e) {
  Interval result(1L, a.precision());
  Interval base = a;
  bool started = false;
  while (e > 0) {
    if (e & 1UL) {
      result = started ? result * base : base;
      started = true;
    }
    e >>= 1;
    if (e > 0) base = sqr(base);
  }
  return result;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::lo_string(int digits) const { return format(lo_, digits, true); }
std::string Interval::hi_string(int digits) const { return format(hi_, digits, false); }

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator*=(const ComplexInterval& o) {
  Interval r = re * o.re - im * o.im;
  Interval i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Interval ComplexInterval::abs2() const { return sqr(re) + sqr(im); }
Interval ComplexInterval::abs() const { return sqrt(abs2()); }

Interval log_abs(const Int& value, mpfr_prec_t prec) {
  if (value == 0) fail(ErrorCode::Internal, "log of zero");
  Int a = ::abs(value);
  mpfr_prec_t p = std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(mpz_sizeinbase(a.get_mpz_t(), 2)) + 8);
  Interval v(a, p);
  return log(v);
}

}  // namespace otarith
