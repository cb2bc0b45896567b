#include "otarith/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "otarith/errors.hpp"

namespace otarith {

ComplexInterval RootEnclosure::box(mpfr_prec_t prec) const {
  if (real) return ComplexInterval(Interval(lo, hi, prec), Interval(prec));
  return ComplexInterval(Interval(Rational(center_re - radius), Rational(center_re + radius), prec),
                         Interval(Rational(center_im - radius), Rational(center_im + radius), prec));
}

namespace {

struct CQ {
  Rational re, im;
};

CQ mul(const CQ& a, const CQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

CQ eval(const QPoly& f, const CQ& z) {
  CQ acc{0, 0};
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = mul(acc, z);
    acc.re += f.coeffs()[i];
  }
  return acc;
}

Rational norm2(const CQ& a) { return a.re * a.re + a.im * a.im; }

Rational dyadic_round(const Rational& x, unsigned bits) {
  Int scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  Rational q(round(x * scale), scale);
  q.canonicalize();
  return q;
}

// Smallest dyadic (k bits after the point) upper bound on sqrt(x).
Rational sqrt_upper(const Rational& x, unsigned k) {
  Int four_k = 1;
  mpz_mul_2exp(four_k.get_mpz_t(), four_k.get_mpz_t(), 2 * k);
  Rational scaled = x * four_k;
  Int n = floor(scaled);
  if (Rational(n) < scaled) n += 1;
  Int s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  if (s * s < n) s += 1;
  Int two_k = 1;
  mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), k);
  Rational r(s, two_k);
  r.canonicalize();
  return r;
}

Rational pow2_neg(unsigned bits) {
  Int d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
  return Rational(Int(1), d);
}

// (lo, hi] holds exactly one root; shrink to width <= w. Returns a closed enclosure.
void refine_real(const QPoly& f, const SturmSequence& st, Rational& lo, Rational& hi, const Rational& w) {
  while (hi - lo > w) {
    Rational m = (lo + hi) / 2;
    if (f(m) == 0) {
      lo = hi = m;
      return;
    }
    if (st.count(lo, m) == 1)
      hi = m;
    else
      lo = m;
  }
}

void isolate_real(const SturmSequence& st, const Rational& a, const Rational& b, std::size_t count,
                  std::vector<std::pair<Rational, Rational>>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.emplace_back(a, b);
    return;
  }
  Rational m = (a + b) / 2;
  std::size_t left = st.count(a, m);
  isolate_real(st, a, m, left, out);
  isolate_real(st, m, b, count - left, out);
}

using CLD = std::complex<long double>;

std::vector<CLD> aberth(const QPoly& f, unsigned attempt) {
  const int n = f.degree();
  std::vector<long double> c(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = static_cast<long double>(f.coeffs()[static_cast<std::size_t>(i)].get_d());
  auto p = [&](CLD z) {
    CLD acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * z + c[static_cast<std::size_t>(i)];
    return acc;
  };
  auto dp = [&](CLD z) {
    CLD acc = 0;
    for (int i = n; i >= 1; --i) acc = acc * z + c[static_cast<std::size_t>(i)] * static_cast<long double>(i);
    return acc;
  };
  long double radius = 1;
  for (int i = 0; i < n; ++i)
    radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)]), 1.0L / (n - i)));
  std::vector<CLD> z(static_cast<std::size_t>(n));
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius, two_pi * k / n + 0.4L + 0.37L * attempt);
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      CLD w = p(z[k]) / dp(z[k]);
      CLD s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      CLD step = w / (1.0L - w * s);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

}  // namespace

RootIsolation isolate_roots(const QPoly& input, unsigned bits) {
  if (input.degree() < 1) return {};
  const QPoly f = to_rational(primitive_part(input));
  const int n = f.degree();
  if (gcd(f, f.derivative()).degree() > 0) fail(ErrorCode::Internal, "isolate_roots needs a squarefree polynomial");

  SturmSequence st(f);
  const Rational bound = root_bound(f);
  const std::size_t s = st.count_all();
  std::vector<std::pair<Rational, Rational>> real_iv;
  isolate_real(st, -bound, bound, st.count(-bound, bound), real_iv);
  if (real_iv.size() != s) fail(ErrorCode::Internal, "Sturm isolation lost a root");

  RootIsolation out;
  out.bits = bits;
  for (auto& [lo, hi] : real_iv) {
    refine_real(f, st, lo, hi, pow2_neg(bits));
    RootEnclosure e;
    e.real = true;
    e.lo = lo;
    e.hi = hi;
    out.real_roots.push_back(e);
  }
  const std::size_t pairs = (static_cast<std::size_t>(n) - s) / 2;
  if (pairs == 0) return out;

  const Rational lc2 = f.leading() * f.leading();
  const QPoly df = f.derivative();
  unsigned prec = std::max(bits + 16, 64u);
  std::vector<CQ> approx;
  auto seed = [&](unsigned attempt) {
    std::vector<CLD> z = aberth(f, attempt);
    std::sort(z.begin(), z.end(), [](CLD a, CLD b) { return a.imag() > b.imag(); });
    approx.clear();
    for (std::size_t k = 0; k < pairs; ++k) approx.push_back({Rational(static_cast<double>(z[k].real())), Rational(static_cast<double>(z[k].imag()))});
  };
  seed(0);

  for (unsigned attempt = 0; attempt < 12; ++attempt) {
    // Newton in exact complex rationals, rounded onto the 2^-prec grid.
    unsigned steps = 3;
    for (unsigned b = 40; b < prec; b *= 2) ++steps;
    for (auto& z : approx) {
      for (unsigned k = 0; k < steps; ++k) {
        CQ fz = eval(f, z), dz = eval(df, z);
        Rational d2 = norm2(dz);
        if (d2 == 0) break;
        CQ q{(fz.re * dz.re + fz.im * dz.im) / d2, (fz.im * dz.re - fz.re * dz.im) / d2};
        z.re = dyadic_round(z.re - q.re, prec);
        z.im = dyadic_round(z.im - q.im, prec);
      }
    }

    std::vector<CQ> all;
    std::vector<std::pair<Rational, Rational>> real_fine = real_iv;
    for (auto& [lo, hi] : real_fine) {
      refine_real(f, st, lo, hi, pow2_neg(prec));
      all.push_back({(lo + hi) / 2, 0});
    }
    for (const auto& z : approx) {
      all.push_back(z);
      all.push_back({z.re, -z.im});
    }

    bool ok = true;
    std::vector<Rational> radius(all.size());
    for (std::size_t i = 0; i < all.size() && ok; ++i) {
      Rational prod = 1;
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (j == i) continue;
        prod *= norm2({all[i].re - all[j].re, all[i].im - all[j].im});
      }
      if (prod == 0) {
        ok = false;
        break;
      }
      Rational r2 = Rational(n * n) * norm2(eval(f, all[i])) / (lc2 * prod);
      radius[i] = sqrt_upper(r2, prec + 8);
    }
    for (std::size_t i = 0; i < all.size() && ok; ++i)
      for (std::size_t j = i + 1; j < all.size() && ok; ++j) {
        Rational sum = radius[i] + radius[j];
        if (sum * sum >= norm2({all[i].re - all[j].re, all[i].im - all[j].im})) ok = false;
      }
    const Rational width_cap = pow2_neg(bits);
    for (std::size_t k = 0; k < pairs && ok; ++k) {
      const CQ& z = approx[k];
      const Rational& r = radius[s + 2 * k];
      if (!(z.im > r) || r > width_cap) ok = false;
    }
    if (ok) {
      for (std::size_t k = 0; k < pairs; ++k) {
        RootEnclosure e;
        e.real = false;
        e.center_re = approx[k].re;
        e.center_im = approx[k].im;
        e.radius = radius[s + 2 * k];
        out.complex_roots.push_back(e);
      }
      std::sort(out.complex_roots.begin(), out.complex_roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
        if (a.center_re != b.center_re) return a.center_re < b.center_re;
        return a.center_im < b.center_im;
      });
      out.bits = bits;
      return out;
    }
    prec *= 2;
    if (attempt % 3 == 2) seed(attempt / 3 + 1);
  }
  fail(ErrorCode::Internal, "complex root certification did not converge");
}

}  // namespace otarith
