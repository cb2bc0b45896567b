#include "otarith/poly.hpp"

#include <algorithm>
#include <sstream>

#include "otarith/errors.hpp"
#include "otarith/linalg.hpp"

namespace otarith {

template <class T>
Polynomial<T>::Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
  normalize();
}

template <class T>
void Polynomial<T>::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

template <class T>
Polynomial<T> Polynomial<T>::monomial(const T& c, std::size_t degree) {
  std::vector<T> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

template <class T>
T Polynomial<T>::operator()(const T& x) const {
  T acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

template <class T>
Polynomial<T> Polynomial<T>::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<T> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

template <class T>
Polynomial<T>& Polynomial<T>::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator*=(const Polynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<T> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  normalize();
  return *this;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator*=(const T& s) {
  for (auto& c : c_) c *= s;
  normalize();
  return *this;
}

template <class T>
Polynomial<T> Polynomial<T>::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

template <class T>
std::string Polynomial<T>::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const T& c = c_[i];
    if (c == 0) continue;
    T a = c < 0 ? T(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (i == 0 || !unit) os << a.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

template class Polynomial<Int>;
template class Polynomial<Rational>;

QPoly to_rational(const ZPoly& f) {
  std::vector<Rational> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) c.emplace_back(a);
  return QPoly(std::move(c));
}

ZPoly primitive_part(const QPoly& f) {
  if (f.is_zero()) return {};
  Int d = common_denominator(std::span<const Rational>(f.coeffs()));
  std::vector<Int> c;
  for (const auto& q : f.coeffs()) c.push_back(Rational(q * d).get_num());
  Int g = 0;
  for (const auto& a : c) g = gcd(g, a);
  if (c.back() < 0) g = -g;
  for (auto& a : c) a /= g;
  return ZPoly(std::move(c));
}

Int content(const ZPoly& f) {
  Int g = 0;
  for (const auto& a : f.coeffs()) g = gcd(g, a);
  return g;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) fail(ErrorCode::Internal, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational c = r[static_cast<std::size_t>(i)] / lb;
    q[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly rem(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

namespace {

QPoly make_monic(const QPoly& f) {
  if (f.is_zero()) return f;
  QPoly r = f;
  r *= Rational(1) / f.leading();
  return r;
}

}  // namespace

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = rem(x, y);
    x = std::move(y);
    y = make_monic(r);
  }
  return make_monic(x);
}

bool divides(const ZPoly& g, const ZPoly& f) {
  if (g.is_zero()) return f.is_zero();
  auto [q, r] = divmod(to_rational(f), to_rational(g));
  if (!r.is_zero()) return false;
  for (const auto& c : q.coeffs())
    if (!is_integer(c)) return false;
  return true;
}

std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& f) {
  // Yun's algorithm.
  std::vector<std::pair<QPoly, unsigned>> out;
  if (f.degree() < 1) return out;
  QPoly a = make_monic(f);
  QPoly d = a.derivative();
  QPoly g = gcd(a, d);
  QPoly b = divmod(a, g).first;
  QPoly c = divmod(d, g).first;
  QPoly e = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    QPoly h = gcd(b, e);
    if (h.degree() > 0) out.emplace_back(make_monic(h), i);
    b = divmod(b, h).first;
    c = divmod(e, h).first;
    e = c - b.derivative();
    ++i;
  }
  return out;
}

Int resultant(const ZPoly& f, const ZPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const int m = f.degree(), n = g.degree();
  if (m == 0) return pow(f.leading(), static_cast<unsigned long>(n));
  if (n == 0) return pow(g.leading(), static_cast<unsigned long>(m));
  const std::size_t size = static_cast<std::size_t>(m + n);
  IntMatrix s(size, size);
  // Rows: n shifted copies of f, then m shifted copies of g (descending coefficients).
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + k)) = f.coeff(static_cast<std::size_t>(m - k));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s(static_cast<std::size_t>(n + r), static_cast<std::size_t>(r + k)) = g.coeff(static_cast<std::size_t>(n - k));
  return determinant(s);
}

Int discriminant(const ZPoly& f) {
  const int n = f.degree();
  if (n < 1) fail(ErrorCode::Internal, "discriminant of a constant");
  Int r = resultant(f, f.derivative());
  Int d = r / f.leading();
  long k = static_cast<long>(n) * (n - 1) / 2;
  return (k % 2 == 0) ? d : Int(-d);
}

SturmSequence::SturmSequence(const QPoly& f) {
  if (f.degree() < 1) return;
  seq_.push_back(f);
  seq_.push_back(f.derivative());
  while (seq_.back().degree() > 0) {
    QPoly r = rem(seq_[seq_.size() - 2], seq_.back());
    if (r.is_zero()) break;
    seq_.push_back(-r);
  }
}

std::size_t SturmSequence::variations_at(const Rational& x) const {
  std::size_t v = 0;
  int last = 0;
  for (const auto& p : seq_) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t SturmSequence::variations_at_infinity(int sign) const {
  std::size_t v = 0;
  int last = 0;
  for (const auto& p : seq_) {
    int s = sgn(p.leading());
    if (sign < 0 && p.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t SturmSequence::count(const Rational& a, const Rational& b) const {
  if (seq_.empty()) return 0;
  return variations_at(a) - variations_at(b);
}

std::size_t SturmSequence::count_all() const {
  if (seq_.empty()) return 0;
  return variations_at_infinity(-1) - variations_at_infinity(1);
}

Rational root_bound(const QPoly& f) {
  if (f.degree() < 1) return 1;
  Rational m = 0;
  for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(::abs(f.coeffs()[static_cast<std::size_t>(i)] / f.leading())));
  return m + 1;
}

ComplexInterval evaluate(const QPoly& f, const ComplexInterval& z) {
  mpfr_prec_t p = std::max(z.re.precision(), z.im.precision());
  ComplexInterval acc{Interval(p), Interval(p)};
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc *= z;
    acc.re += Interval(f.coeffs()[i], p);
  }
  return acc;
}

Interval evaluate(const QPoly& f, const Interval& x) {
  mpfr_prec_t p = x.precision();
  Interval acc(p);
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc *= x;
    acc += Interval(f.coeffs()[i], p);
  }
  return acc;
}

}  // namespace otarith
