#include <algorithm>
#include <functional>
#include <random>

#include "otarith/errors.hpp"
#include "otarith/poly.hpp"

namespace otarith {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 powmod_u(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) {
  if (a % p == 0) fail(ErrorCode::Internal, "inverse of zero mod p");
  return powmod_u(a, p - 2, p);
}

u64 reduce(const Int& a, u64 p) {
  Int r = floor_mod(a, Int(static_cast<unsigned long>(p)));
  return r.get_ui();
}

}  // namespace

PolyModP::PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2 || p >= (u64(1) << 62)) fail(ErrorCode::Internal, "PolyModP: modulus out of range");
  for (auto& c : c_) c %= p_;
  normalize();
}

PolyModP::PolyModP(std::uint64_t p, const ZPoly& f) : p_(p) {
  if (p < 2 || p >= (u64(1) << 62)) fail(ErrorCode::Internal, "PolyModP: modulus out of range");
  for (const auto& a : f.coeffs()) c_.push_back(reduce(a, p));
  normalize();
}

void PolyModP::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly PolyModP::lift() const {
  std::vector<Int> c;
  for (auto a : c_) c.emplace_back(static_cast<unsigned long>(a));
  return ZPoly(std::move(c));
}

PolyModP PolyModP::monic() const {
  if (c_.empty()) return *this;
  u64 inv = invmod(c_.back(), p_);
  std::vector<u64> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mulmod(c_[i], inv, p_);
  return PolyModP(p_, std::move(c));
}

PolyModP PolyModP::derivative() const {
  if (c_.size() <= 1) return PolyModP(p_, std::vector<u64>{});
  std::vector<u64> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = mulmod(c_[i], i % p_, p_);
  return PolyModP(p_, std::move(c));
}

PolyModP PolyModP::operator+(const PolyModP& o) const {
  std::vector<u64> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = addmod(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0, p_);
  return PolyModP(p_, std::move(c));
}

PolyModP PolyModP::operator-(const PolyModP& o) const {
  std::vector<u64> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = submod(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0, p_);
  return PolyModP(p_, std::move(c));
}

PolyModP PolyModP::operator*(const PolyModP& o) const {
  if (c_.empty() || o.c_.empty()) return PolyModP(p_, std::vector<u64>{});
  std::vector<u64> c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = addmod(c[i + j], mulmod(c_[i], o.c_[j], p_), p_);
  }
  return PolyModP(p_, std::move(c));
}

std::pair<PolyModP, PolyModP> PolyModP::divmod(const PolyModP& a, const PolyModP& b) {
  if (b.is_zero()) fail(ErrorCode::Internal, "PolyModP division by zero");
  const u64 p = a.p_;
  if (a.degree() < b.degree()) return {PolyModP(p, std::vector<u64>{}), a};
  std::vector<u64> r = a.c_;
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<u64> q(r.size() - db);
  u64 inv = invmod(b.leading(), p);
  for (std::size_t i = r.size(); i-- > db;) {
    u64 c = mulmod(r[i], inv, p);
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = submod(r[i - db + j], mulmod(c, b.c_[j], p), p);
  }
  r.resize(db);
  return {PolyModP(p, std::move(q)), PolyModP(p, std::move(r))};
}

PolyModP PolyModP::gcd(PolyModP a, PolyModP b) {
  while (!b.is_zero()) {
    PolyModP r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyModP PolyModP::powmod(const PolyModP& base, const Int& e, const PolyModP& m) {
  PolyModP result(m.p_, std::vector<u64>{1});
  result = divmod(result, m).second;
  PolyModP b = divmod(base, m).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = divmod(result * result, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(result * b, m).second;
  }
  return result;
}

namespace {

using Factors = std::vector<std::pair<PolyModP, unsigned>>;

PolyModP x_poly(u64 p) { return PolyModP(p, std::vector<u64>{0, 1}); }
PolyModP one_poly(u64 p) { return PolyModP(p, std::vector<u64>{1}); }

// f monic; output squarefree monic parts with multiplicities.
void squarefree_mod_p(const PolyModP& f, unsigned mult, Factors& out) {
  const u64 p = f.modulus();
  if (f.degree() < 1) return;
  PolyModP df = f.derivative();
  PolyModP c = PolyModP::gcd(f, df);
  PolyModP w = PolyModP::divmod(f, c).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    PolyModP y = PolyModP::gcd(w, c);
    PolyModP z = PolyModP::divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = PolyModP::divmod(c, y).first;
  }
  if (c.degree() > 0) {
    // c is a p-th power: take the p-th root coefficientwise.
    std::vector<u64> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += p) root.push_back(c.coeffs()[k]);
    squarefree_mod_p(PolyModP(p, std::move(root)).monic(), mult * static_cast<unsigned>(p), out);
  }
}

std::vector<std::pair<PolyModP, unsigned>> distinct_degree(PolyModP g) {
  const u64 p = g.modulus();
  std::vector<std::pair<PolyModP, unsigned>> out;
  PolyModP h = x_poly(p);
  Int pe(static_cast<unsigned long>(p));
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(g.degree()); ++d) {
    h = PolyModP::powmod(h, pe, g);
    PolyModP gd = PolyModP::gcd(g, h - x_poly(p));
    if (gd.degree() > 0) {
      out.emplace_back(gd, d);
      g = PolyModP::divmod(g, gd).first;
      h = PolyModP::divmod(h, g).second;
    }
  }
  if (g.degree() > 0) out.emplace_back(g.monic(), static_cast<unsigned>(g.degree()));
  return out;
}

void equal_degree(const PolyModP& g, unsigned d, std::mt19937_64& rng, std::vector<PolyModP>& out) {
  const u64 p = g.modulus();
  if (static_cast<unsigned>(g.degree()) == d) {
    out.push_back(g.monic());
    return;
  }
  Int q = pow(Int(static_cast<unsigned long>(p)), d);
  Int e = (q - 1) / 2;
  for (;;) {
    std::vector<u64> a(static_cast<std::size_t>(g.degree()));
    for (auto& c : a) c = rng() % p;
    PolyModP r(p, std::move(a));
    if (r.degree() < 1) continue;
    PolyModP t(p, std::vector<u64>{});
    if (p == 2) {
      PolyModP s = r;
      t = r;
      for (unsigned i = 1; i < d; ++i) {
        s = PolyModP::divmod(s * s, g).second;
        t = t + s;
      }
    } else {
      t = PolyModP::powmod(r, e, g) - one_poly(p);
    }
    PolyModP f1 = PolyModP::gcd(g, t);
    if (f1.degree() > 0 && f1.degree() < g.degree()) {
      equal_degree(f1, d, rng, out);
      equal_degree(PolyModP::divmod(g, f1).first.monic(), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<PolyModP, unsigned>> factor_mod_p(const ZPoly& f, std::uint64_t p) {
  PolyModP fp(p, f);
  if (fp.degree() < 1) return {};
  Factors sf;
  squarefree_mod_p(fp.monic(), 1, sf);
  std::mt19937_64 rng(0x5eed5eedULL ^ p);
  Factors out;
  for (const auto& [part, mult] : sf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<PolyModP> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    const auto& ca = a.first.coeffs();
    const auto& cb = b.first.coeffs();
    return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
  });
  return out;
}

}  // namespace otarith
