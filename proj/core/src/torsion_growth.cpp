#include "otarith/torsion_growth.hpp"

#include "otarith/errors.hpp"
#include "otarith/roots.hpp"
#include "otarith/units.hpp"

namespace otarith {

namespace {

Int abs_integer_norm(const FieldElement& a) {
  Rational nm = norm(a);
  if (nm.get_den() != 1) fail(ErrorCode::NonIntegral, "norm is not an integer");
  return ::abs(nm.get_num());
}

void require_unit(const FieldElement& u) {
  if (!is_unit(u)) fail(ErrorCode::NotUnit, "not a unit: " + u.to_string());
}

}  // namespace

Int torsion_order(const FieldElement& u, unsigned long n) {
  require_unit(u);
  if (n == 0) fail(ErrorCode::ShapeError, "n must be positive");
  FieldElement x = u.field()->one() - pow(u, static_cast<long long>(n));
  if (x.is_zero()) fail(ErrorCode::TorsionUnit, "u^" + std::to_string(n) + " = 1");
  return abs_integer_norm(x);
}

Int torsion_order_resultant(const FieldElement& u, unsigned long n) {
  require_unit(u);
  if (n == 0) fail(ErrorCode::ShapeError, "n must be positive");
  ZPoly f = min_poly(u);
  ZPoly g = ZPoly::monomial(Int(1), n) - ZPoly::constant(Int(1));
  Int r = ::abs(resultant(f, g));
  if (r == 0) fail(ErrorCode::TorsionUnit, "u^" + std::to_string(n) + " = 1");
  Int out;
  mpz_pow_ui(out.get_mpz_t(), r.get_mpz_t(), u.field()->degree() / static_cast<std::size_t>(f.degree()));
  return out;
}

Interval cyclotomic_product(const ZPoly& f, unsigned long n, unsigned bits) {
  const mpfr_prec_t prec = bits + 32;
  const QPoly q = to_rational(f);
  const Interval two_pi = Interval::pi(prec) * Interval(2L, prec);
  Interval acc(1L, prec);
  for (unsigned long k = 0; k < n; ++k) {
    Rational frac(static_cast<long>(k), static_cast<long>(n));
    frac.canonicalize();
    Interval angle = two_pi * Interval(frac, prec);
    ComplexInterval z(cos(angle), sin(angle));
    acc *= evaluate(q, z).abs();
  }
  return acc;
}

Interval mahler_measure(const ZPoly& f, unsigned bits) {
  if (f.is_zero()) fail(ErrorCode::ZeroElement, "Mahler measure of the zero polynomial");
  for (unsigned b = std::max(bits, 32u);; b *= 2) {
    const mpfr_prec_t prec = b + 32;
    Interval m = abs(Interval(f.leading(), prec));
    const Interval one(1L, prec);
    for (const auto& [g, e] : squarefree_decomposition(to_rational(f))) {
      if (g.degree() < 1) continue;
      RootIsolation iso = isolate_roots(g, b);
      Interval part = one;
      for (const auto& r : iso.real_roots) part *= max(one, abs(r.box(prec).re));
      for (const auto& r : iso.complex_roots) part *= sqr(max(one, r.box(prec).abs()));
      m *= pow(part, e);
    }
    if (m.width() <= std::ldexp(1.0, -static_cast<int>(bits / 2)) * std::max(1.0, m.hi_double()) || b >= 8 * bits)
      return m;
  }
}

bool kronecker_guard(const FieldElement& u, unsigned bits) {
  const Interval one(1L, bits + 32);
  for (unsigned b = bits; b <= 8 * bits; b *= 2) {
    auto emb = u.field()->embeddings(b);
    for (const auto& pl : emb->places) {
      Interval m = pl.real ? abs(embed_real(u, pl, emb->prec)) : embed(u, pl, emb->prec).abs();
      if (!m.overlaps(one)) return true;
    }
  }
  return false;
}

GrowthReport growth_report(const FieldElement& u, unsigned long horizon, unsigned bits) {
  if (horizon < 4) fail(ErrorCode::ShapeError, "horizon must be at least 4");
  require_unit(u);
  const mpfr_prec_t prec = bits + 32;
  GrowthReport rep{u, {}, Interval(prec), Interval(prec), Interval(prec), Interval(prec), false};
  const FieldElement one = u.field()->one();
  FieldElement w = one;
  for (unsigned long n = 1; n <= horizon; ++n) {
    w *= u;
    FieldElement x = one - w;
    if (x.is_zero()) fail(ErrorCode::TorsionUnit, "u^" + std::to_string(n) + " = 1");
    Int t = abs_integer_norm(x);
    Interval lt = log_abs(t, prec) / Interval(static_cast<long>(n), prec);
    rep.terms.push_back(GrowthTerm{n, std::move(t), std::move(lt)});
  }
  rep.mahler = mahler_measure(min_poly(u), bits);
  // M(f_u)^(n / deg f_u) governs |N(1 - u^n)| when u does not generate K.
  const long k = static_cast<long>(u.field()->degree() / static_cast<std::size_t>(min_poly(u).degree()));
  rep.log_mahler = log(rep.mahler) * Interval(k, prec);
  rep.limit_gap = abs(rep.terms.back().log_term - rep.log_mahler);
  rep.half_gap = abs(rep.terms[horizon / 2 - 1].log_term - rep.log_mahler);
  rep.trend_certified = rep.limit_gap.certainly_less(rep.half_gap);
  return rep;
}

std::vector<ChainLevel> covering_chain(const FieldElement& u, unsigned long p, unsigned depth) {
  if (depth < 1) fail(ErrorCode::ShapeError, "depth must be at least 1");
  if (p < 2) fail(ErrorCode::ShapeError, "p must be at least 2");
  std::vector<ChainLevel> out;
  unsigned long n = 1;
  for (unsigned j = 0; j <= depth; ++j, n *= p) {
    ChainLevel level;
    level.n = n;
    level.torsion = torsion_order(u, n);
    level.h1 = h1_structure(UnitSubgroup(u.field(), {pow(u, static_cast<long long>(n))}));
    out.push_back(std::move(level));
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i].divides_next = out[i + 1].torsion % out[i].torsion == 0;
  return out;
}

}  // namespace otarith
