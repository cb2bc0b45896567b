#include "otarith/residue.hpp"

#include <algorithm>
#include <limits>

#include "otarith/errors.hpp"

namespace otarith {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 mod(i128 a, i64 m) {
  i128 r = a % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

i64 to_i64(const Int& a) {
  if (!mpz_fits_slong_p(a.get_mpz_t())) fail(ErrorCode::CapExceeded, "value does not fit a machine word");
  return a.get_si();
}

// g = gcd(a, b) >= 0 with a*x + b*y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    i64 q = a / b;
    i64 t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

}  // namespace

ResidueRing::ResidueRing(const IntegerIdeal& ideal, std::uint64_t cap) : field_(ideal.field()) {
  const Int norm = ideal.norm();
  if (norm > Int(static_cast<unsigned long>(cap)))
    fail(ErrorCode::CapExceeded, "residue ring of order " + norm.get_str() + " exceeds the cap " + std::to_string(cap));
  n_ = field_->degree();
  modulus_ = to_i64(norm);
  size_ = static_cast<std::uint64_t>(modulus_);
  diag_.resize(n_);
  hnf_.assign(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    diag_[i] = to_i64(ideal.basis()(i, i));
    for (std::size_t j = 0; j < n_; ++j) hnf_[i * n_ + j] = mod(to_i64(ideal.basis()(i, j)), modulus_);
  }
  for (std::size_t i = 0; i < n_; ++i) hnf_[i * n_ + i] = diag_[i];
  table_.assign(n_ * n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const RatVector& t = field_->product(i, j);
      for (std::size_t k = 0; k < n_; ++k) {
        Int v = floor_mod(t[k].get_num(), norm);
        table_[(i * n_ + j) * n_ + k] = v.get_si();
      }
    }
  std::vector<i64> one(n_);
  IntVector oc = field_->one().integer_coords();
  std::vector<i128> w(n_);
  for (std::size_t i = 0; i < n_; ++i) w[i] = mod(to_i64(floor_mod(oc[i], norm)), modulus_);
  reduce_in_place(w);
  for (std::size_t i = 0; i < n_; ++i) one[i] = static_cast<i64>(w[i]);
  one_ = index_of(one);
}

void ResidueRing::reduce_in_place(std::vector<i128>& v) const {
  for (auto& x : v) x = mod(x, modulus_);
  for (std::size_t i = 0; i < n_; ++i) {
    i128 q = v[i] / diag_[i];
    if (q == 0) continue;
    for (std::size_t j = i; j < n_; ++j) v[j] = v[j] - q * hnf_[i * n_ + j];
    for (std::size_t j = i + 1; j < n_; ++j) v[j] = mod(v[j], modulus_);
  }
}

std::uint64_t ResidueRing::index_of(std::span<const std::int64_t> r) const {
  std::uint64_t idx = 0;
  for (std::size_t i = n_; i-- > 0;) idx = idx * static_cast<std::uint64_t>(diag_[i]) + static_cast<std::uint64_t>(r[i]);
  return idx;
}

std::vector<std::int64_t> ResidueRing::residue_of(std::uint64_t index) const {
  std::vector<i64> r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto d = static_cast<std::uint64_t>(diag_[i]);
    r[i] = static_cast<i64>(index % d);
    index /= d;
  }
  return r;
}

std::vector<std::int64_t> ResidueRing::reduce(const FieldElement& a) const {
  if (a.field() != field_) fail(ErrorCode::MixedFields, "element of another field");
  IntVector c = a.integer_coords();
  Int m(static_cast<long>(modulus_));
  std::vector<i128> w(n_);
  for (std::size_t i = 0; i < n_; ++i) w[i] = floor_mod(c[i], m).get_si();
  reduce_in_place(w);
  std::vector<i64> r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = static_cast<i64>(w[i]);
  return r;
}

FieldElement ResidueRing::lift(std::uint64_t index) const {
  auto r = residue_of(index);
  IntVector c;
  for (auto x : r) c.emplace_back(static_cast<long>(x));
  return field_->element(c);
}

std::vector<std::int64_t> ResidueRing::multiply(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const {
  std::vector<i128> acc(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      i128 ab = static_cast<i128>(a[i]) * b[j] % modulus_;
      const i64* t = &table_[(i * n_ + j) * n_];
      for (std::size_t k = 0; k < n_; ++k)
        if (t[k] != 0) acc[k] = (acc[k] + ab * t[k]) % modulus_;
    }
  }
  reduce_in_place(acc);
  std::vector<i64> r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = static_cast<i64>(acc[i]);
  return r;
}

std::uint64_t ResidueRing::multiply_index(std::uint64_t a, std::uint64_t b) const {
  auto ra = residue_of(a), rb = residue_of(b);
  return index_of(multiply(ra, rb));
}

bool ResidueRing::is_unit(std::span<const std::int64_t> x) const {
  // Insert the rows x * b_i into the HNF of I, working modulo N(I). The ideal
  // (x) + I is the whole ring exactly when every pivot reaches 1.
  std::vector<i64> w = hnf_;
  std::vector<i64> v(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    std::vector<i64> e(n_, 0);
    e[r] = 1;
    v = multiply(x, e);
    for (std::size_t j = 0; j < n_; ++j) {
      if (v[j] == 0) continue;
      i64& pivot = w[j * n_ + j];
      i64 s, t;
      i64 g = ext_gcd(pivot, v[j], s, t);
      i64 p = pivot / g, q = v[j] / g;
      for (std::size_t k = j; k < n_; ++k) {
        i128 wk = w[j * n_ + k], vk = v[k];
        w[j * n_ + k] = mod(s * wk + t * vk, modulus_);
        v[k] = mod(p * vk - q * wk, modulus_);
      }
      if (w[j * n_ + j] == 0) w[j * n_ + j] = modulus_;
    }
    bool all_one = true;
    for (std::size_t j = 0; j < n_ && all_one; ++j) all_one = (w[j * n_ + j] == 1);
    if (all_one) return true;
  }
  return false;
}

// ---------------------------------------------------------------- unit group

ResidueUnitGroup::ResidueUnitGroup(const IntegerIdeal& ideal, std::uint64_t cap)
    : ring_(std::make_shared<ResidueRing>(ideal, cap)) {
  const ResidueRing& ring = *ring_;
  const std::uint64_t size = ring.size();
  if (size > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
    fail(ErrorCode::CapExceeded, "residue ring too large for the discrete-log table");

  std::vector<char> unit(size, 0);
  std::uint64_t unit_total = 0;
  for (std::uint64_t i = 0; i < size; ++i) {
    if (ring.is_unit(ring.residue_of(i))) {
      unit[i] = 1;
      ++unit_total;
    }
  }

  // Grow H = <g_1, ..., g_m> one generator at a time. Members are listed so
  // that the member at position pos is prod g_i^{digit_i(pos)} in the mixed
  // radix of the relative orders.
  std::vector<std::int32_t> pos_of(size, -1);
  std::vector<std::uint64_t> members{ring.one_index()};
  pos_of[ring.one_index()] = 0;
  std::vector<std::uint64_t> gens;
  std::vector<std::int64_t> rel_order;
  std::vector<IntVector> relations;
  auto digits = [&](std::uint64_t pos) {
    IntVector d(rel_order.size());
    for (std::size_t i = 0; i < rel_order.size(); ++i) {
      d[i] = static_cast<long>(pos % static_cast<std::uint64_t>(rel_order[i]));
      pos /= static_cast<std::uint64_t>(rel_order[i]);
    }
    return d;
  };

  std::uint64_t scan = 0;
  while (members.size() < unit_total) {
    while (!unit[scan] || pos_of[scan] >= 0) ++scan;
    const std::uint64_t u = scan;
    std::int64_t k = 1;
    std::uint64_t power = u;
    while (pos_of[power] < 0) {
      power = ring.multiply_index(power, u);
      ++k;
    }
    IntVector rel = digits(static_cast<std::uint64_t>(pos_of[power]));
    for (auto& r : rel) r = -r;
    rel.emplace_back(static_cast<long>(k));
    for (auto& r : relations) r.emplace_back(0);
    relations.push_back(rel);

    const std::size_t base = members.size();
    members.reserve(base * static_cast<std::size_t>(k));
    std::uint64_t factor = u;
    for (std::int64_t j = 1; j < k; ++j) {
      for (std::size_t i = 0; i < base; ++i) {
        std::uint64_t e = ring.multiply_index(members[i], factor);
        pos_of[e] = static_cast<std::int32_t>(members.size());
        members.push_back(e);
      }
      factor = ring.multiply_index(factor, u);
    }
    gens.push_back(u);
    rel_order.push_back(k);
  }

  const std::size_t m = gens.size();
  IntMatrix r(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r(i, j) = relations[i][j];
  SmithForm sf = snf(r);
  std::vector<std::size_t> keep;
  IntVector orders;
  for (std::size_t j = 0; j < m; ++j)
    if (::abs(sf.divisors[j]) > 1) {
      keep.push_back(j);
      orders.push_back(::abs(sf.divisors[j]));
    }
  structure_ = FiniteAbelianGroup::from_cyclic_orders(orders);
  if (structure_.order() != Int(static_cast<unsigned long>(unit_total)))
    fail(ErrorCode::Internal, "unit group order mismatch");
  k_ = keep.size();

  slot_.assign(size, -1);
  exps_.assign(members.size() * k_, 0);
  generators_.assign(k_, FieldElement());
  for (std::size_t pos = 0; pos < members.size(); ++pos) {
    IntVector v = digits(pos);
    IntVector w = std::span<const Int>(v) * sf.right;
    bool standard = true;
    std::size_t which = k_;
    for (std::size_t c = 0; c < k_; ++c) {
      Int e = floor_mod(w[keep[c]], orders[c]);
      exps_[pos * k_ + c] = static_cast<std::int32_t>(e.get_si());
      if (e == 1) {
        if (which != k_) standard = false;
        which = c;
      } else if (e != 0) {
        standard = false;
      }
    }
    slot_[members[pos]] = static_cast<std::int32_t>(pos);
    if (standard && which < k_ && !generators_[which].valid()) generators_[which] = ring.lift(members[pos]);
  }
  for (const auto& g : generators_)
    if (!g.valid()) fail(ErrorCode::Internal, "standard generator not found");
}

IntVector ResidueUnitGroup::discrete_log(const FieldElement& a) const {
  std::uint64_t idx = ring_->index_of(a);
  std::int32_t s = slot_[idx];
  if (s < 0) fail(ErrorCode::NotAUnitResidue, "residue is not a unit");
  IntVector out(k_);
  for (std::size_t c = 0; c < k_; ++c) out[c] = exps_[static_cast<std::size_t>(s) * k_ + c];
  return out;
}

}  // namespace otarith
