#pragma once

#include <vector>

#include "otarith/bigint.hpp"
#include "otarith/interval.hpp"
#include "otarith/poly.hpp"

namespace otarith {

// Exact enclosure of one root of a squarefree polynomial.
//  - real roots: the closed interval [lo, hi] holds exactly one root (lo == hi
//    when the root is rational and was hit exactly);
//  - non-real roots: the closed disk |z - center| <= radius holds exactly one
//    root and does not meet the real axis. Only the root with positive
//    imaginary part of each conjugate pair is reported.
struct RootEnclosure {
  bool real = true;
  Rational lo, hi;                   // real roots
  Rational center_re, center_im;     // non-real roots
  Rational radius;

  // Enclosing box at the given working precision.
  ComplexInterval box(mpfr_prec_t prec) const;
};

struct RootIsolation {
  std::vector<RootEnclosure> real_roots;     // ascending
  std::vector<RootEnclosure> complex_roots;  // one per conjugate pair, Im > 0
  unsigned bits = 0;                         // enclosure width <= 2^-bits
};

// Certified isolation of all roots of a squarefree polynomial with rational
// coefficients. Real roots come from Sturm bisection; non-real roots from
// Newton-polished approximations certified by the inclusion-disk theorem
// (disks of radius n|f(z_i)| / |lc prod_{j!=i}(z_i - z_j)| are disjoint).
// Precision is doubled internally until certification succeeds.
RootIsolation isolate_roots(const QPoly& f, unsigned bits);

}  // namespace otarith
