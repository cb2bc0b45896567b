#pragma once

#include <vector>

#include "otarith/interval.hpp"
#include "otarith/numfield.hpp"
#include "otarith/ot_aut.hpp"
#include "otarith/poly.hpp"

namespace otarith {

// |N(1 - u^n)|. Throws TorsionUnit when u^n = 1.
Int torsion_order(const FieldElement& u, unsigned long n);

// |Res(f_u, x^n - 1)|^(deg K / deg f_u).
Int torsion_order_resultant(const FieldElement& u, unsigned long n);

// prod over n-th roots of unity z of |f(z)|, enclosed.
Interval cyclotomic_product(const ZPoly& f, unsigned long n, unsigned bits = 128);

Interval mahler_measure(const ZPoly& f, unsigned bits = 128);

// Some embedding of u certified off the unit circle.
bool kronecker_guard(const FieldElement& u, unsigned bits = 128);

struct GrowthTerm {
  unsigned long n = 0;
  Int torsion;
  Interval log_term;  // log(torsion) / n
};

struct GrowthReport {
  FieldElement unit;
  std::vector<GrowthTerm> terms;
  Interval mahler;
  Interval log_mahler;
  Interval limit_gap;       // |last log term - log M(f)|
  Interval half_gap;        // same at n = N/2
  bool trend_certified = false;  // limit_gap.hi < half_gap.lo
};

// Throws TorsionUnit, ShapeError for horizon < 4.
GrowthReport growth_report(const FieldElement& u, unsigned long horizon, unsigned bits = 128);

struct ChainLevel {
  unsigned long n = 0;
  Int torsion;
  H1Report h1;
  bool divides_next = true;  // torsion(n) | torsion(p n); true on the last level
};

std::vector<ChainLevel> covering_chain(const FieldElement& u, unsigned long p, unsigned depth);

}  // namespace otarith
