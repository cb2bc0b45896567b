#include "otarith/integers.hpp"

#include <algorithm>
#include <map>

#include "otarith/errors.hpp"

namespace otarith {

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

// Pollard rho with Brent's cycle detection. n composite, odd.
Int rho(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Int& v) {
      Int t = v * v + c;
      return floor_mod(t, n);
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = floor_mod(q * ::abs(Int(x - y)), n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(::abs(Int(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor_integer(const Int& value) {
  if (value == 0) fail(ErrorCode::Internal, "factor_integer(0)");
  Int n = ::abs(value);
  std::map<Int, unsigned> found;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++found[Int(p)];
      n /= p;
    }
  }
  if (n > 1) {
    if (n < Int(10000) * Int(10000))
      ++found[n];
    else
      split(n, found);
  }
  return {found.begin(), found.end()};
}

}  // namespace otarith
