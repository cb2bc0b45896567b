#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace otarith {

using Int = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

inline Int abs(const Int& a) { return ::abs(a); }
inline Rational abs(const Rational& a) { return ::abs(a); }

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
inline Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Int floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

// Nearest integer, ties rounded up.
inline Int round(const Rational& q) { return floor(q + Rational(1, 2)); }

inline std::string to_string(const Int& a) { return a.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "12", "-7", "3/4". Throws std::invalid_argument on malformed text.
Int parse_int(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace otarith
