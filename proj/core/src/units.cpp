#include "otarith/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "otarith/errors.hpp"
#include "otarith/integers.hpp"

namespace otarith {

namespace {

bool is_torsion_one(const FieldElement& g) { return g.is_one(); }

// Interval determinant by cofactor expansion (always a valid enclosure).
Interval interval_det(const std::vector<std::vector<Interval>>& m, mpfr_prec_t prec) {
  const std::size_t n = m.size();
  if (n == 0) return Interval(1L, prec);
  if (n == 1) return m[0][0];
  Interval acc(prec);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Interval>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Interval> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    Interval term = m[0][c] * interval_det(minor, prec);
    if (c % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

enum class Rank { Full, Deficient, Unknown };

// Do the generators have independent log vectors? Full when some r x r minor
// is certified nonzero.
Rank certified_independence(const std::vector<FieldElement>& gens, unsigned bits) {
  const std::size_t r = gens.size();
  if (r == 0) return Rank::Full;
  const NumberField& k = *gens.front().field();
  const std::size_t places = k.signature().real + k.signature().complex;
  if (r > places - 1) return Rank::Deficient;
  auto emb = k.embeddings(bits);
  std::vector<std::vector<Interval>> logs;
  for (const auto& g : gens) logs.push_back(log_embedding(g, *emb));
  std::vector<std::size_t> cols(r);
  std::iota(cols.begin(), cols.end(), 0);
  bool any_undecided = false;
  for (;;) {
    std::vector<std::vector<Interval>> m(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c : cols) m[i].push_back(logs[i][c]);
    Interval d = interval_det(m, emb->prec);
    if (!d.contains_zero()) return Rank::Full;
    if (d.width() > 1e-30) any_undecided = true;
    std::size_t i = r;
    while (i > 0 && cols[i - 1] == places - r + (i - 1)) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < r; ++j) cols[j] = cols[j - 1] + 1;
  }
  return any_undecided ? Rank::Unknown : Rank::Deficient;
}

// Least-squares exponents of y over the rows of a (long double).
std::vector<long double> least_squares(const std::vector<std::vector<long double>>& a, const std::vector<long double>& y) {
  const std::size_t r = a.size();
  std::vector<std::vector<long double>> g(r, std::vector<long double>(r + 1, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t c = 0; c < y.size(); ++c) g[i][j] += a[i][c] * a[j][c];
    for (std::size_t c = 0; c < y.size(); ++c) g[i][r] += a[i][c] * y[c];
  }
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < r; ++i)
      if (std::fabs(g[i][k]) > std::fabs(g[p][k])) p = i;
    std::swap(g[k], g[p]);
    if (g[k][k] == 0) fail(ErrorCode::Internal, "singular normal equations");
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k) continue;
      long double f = g[i][k] / g[k][k];
      for (std::size_t j = k; j <= r; ++j) g[i][j] -= f * g[k][j];
    }
  }
  std::vector<long double> x(r);
  for (std::size_t i = 0; i < r; ++i) x[i] = g[i][r] / g[i][i];
  return x;
}

}  // namespace

// Units with large coordinates lose everything to cancellation at the
// requested precision, so each place is refined until its log is tight.
std::vector<Interval> log_embedding(const FieldElement& a, const EmbeddingSet& emb) {
  constexpr double kLogWidth = 1e-12;
  constexpr unsigned kMaxBits = 65536;
  std::vector<Interval> out;
  for (std::size_t i = 0; i < emb.places.size(); ++i) {
    const EmbeddingSet* cur = &emb;
    std::shared_ptr<const EmbeddingSet> refined;
    for (unsigned bits = emb.bits;; bits *= 2) {
      const Place& pl = cur->places[i];
      Interval m = pl.real ? abs(embed_real(a, pl, cur->prec)) : embed(a, pl, cur->prec).abs();
      if (m.is_positive()) {
        Interval l = log(m);
        if (l.width() < kLogWidth || bits >= kMaxBits) {
          out.push_back(std::move(l));
          break;
        }
      } else if (bits >= kMaxBits) {
        fail(ErrorCode::Internal, "embedding of a unit not separated from zero at " + std::to_string(kMaxBits) + " bits");
      }
      refined = a.field()->embeddings(bits * 2);
      cur = refined.get();
    }
  }
  return out;
}

bool is_unit(const FieldElement& a) {
  if (!a.is_integral()) fail(ErrorCode::NonIntegral, "unit test on a non-integral element: " + a.to_string());
  return ::abs(norm(a)) == 1;
}

UnitSubgroup::UnitSubgroup(FieldPtr field, std::vector<FieldElement> generators) : field_(std::move(field)) {
  for (auto& g : generators) {
    if (g.field() != field_) fail(ErrorCode::MixedFields, "generator of another field");
    if (!is_unit(g)) fail(ErrorCode::NotUnit, "generator is not a unit: " + g.to_string());
    if (is_torsion_one(g)) continue;
    gens_.push_back(std::move(g));
  }
  for (unsigned bits = 128; bits <= 2048; bits *= 2) {
    switch (certified_independence(gens_, bits)) {
      case Rank::Full:
        return;
      case Rank::Deficient:
        fail(ErrorCode::DependentGenerators, "generators are multiplicatively dependent");
      case Rank::Unknown:
        break;
    }
  }
  fail(ErrorCode::DependentGenerators, "generators are numerically dependent at 2048 bits");
}

std::string_view to_string(UnitProvenance p) {
  return p == UnitProvenance::Input ? "input" : "searched+certified";
}

UnitBasis make_unit_basis(const FieldPtr& field, std::vector<FieldElement> units, UnitProvenance provenance,
                          std::string certificate) {
  const Signature sig = field->signature();
  const std::size_t rank = sig.real + sig.complex - 1;
  if (units.size() != rank)
    fail(ErrorCode::ShapeError, "unit basis needs " + std::to_string(rank) + " elements, got " + std::to_string(units.size()));
  for (const auto& u : units) {
    if (u.field() != field) fail(ErrorCode::MixedFields, "unit of another field");
    if (!is_unit(u)) fail(ErrorCode::NotUnit, "declared basis element is not a unit: " + u.to_string());
    if (!is_totally_positive(u)) fail(ErrorCode::NotUnit, "declared basis element is not totally positive: " + u.to_string());
  }
  UnitSubgroup check(field, units);
  if (check.rank() != rank) fail(ErrorCode::DependentGenerators, "declared unit basis contains 1");
  return UnitBasis{field, std::move(units), provenance, std::move(certificate)};
}

IntegerIdeal j_ideal(const UnitSubgroup& group) {
  std::vector<FieldElement> gens;
  for (const auto& g : group.generators()) gens.push_back(g - group.field()->one());
  if (gens.empty()) fail(ErrorCode::ZeroIdeal, "J of the trivial group is the zero ideal");
  return ideal_from_generators(group.field(), gens);
}

FieldElement unit_from_exponents(std::span<const FieldElement> basis, std::span<const Int> exponents) {
  if (basis.size() != exponents.size()) fail(ErrorCode::ShapeError, "exponent vector has the wrong length");
  if (basis.empty()) fail(ErrorCode::Internal, "empty unit basis");
  FieldElement r = basis.front().field()->one();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (exponents[i] != 0) r = r * pow(basis[i], exponents[i]);
  return r;
}

IntVector exponent_vector(const FieldElement& u, std::span<const FieldElement> basis) {
  if (basis.empty()) {
    if (u.is_one()) return {};
    fail(ErrorCode::NotInSpan, "element is not in the trivial group");
  }
  const NumberField& k = *u.field();
  auto emb = k.embeddings(128);
  std::vector<std::vector<long double>> a;
  for (const auto& b : basis) {
    std::vector<long double> row;
    for (const auto& l : log_embedding(b, *emb)) row.push_back(l.mid_long_double());
    a.push_back(std::move(row));
  }
  if (!is_unit(u)) fail(ErrorCode::NotInSpan, "element is not a unit");
  std::vector<long double> y;
  for (const auto& l : log_embedding(u, *emb)) y.push_back(l.mid_long_double());
  std::vector<long double> x = least_squares(a, y);
  IntVector e;
  for (long double xi : x) {
    long double r = std::nearbyint(xi);
    if (std::fabs(xi - r) >= 0.25L) fail(ErrorCode::NotInSpan, "log coordinates are not near integers");
    e.emplace_back(std::to_string(static_cast<long long>(r)));
  }
  if (!(unit_from_exponents(basis, e) == u)) fail(ErrorCode::NotInSpan, "element is not in the span of the basis");
  return e;
}

IntMatrix exponent_matrix(std::span<const FieldElement> gens, std::span<const FieldElement> basis) {
  IntMatrix m(0, basis.size());
  for (const auto& g : gens) m.append_row(exponent_vector(g, basis));
  return m;
}

Int subgroup_index(const UnitSubgroup& sub, std::span<const FieldElement> super) {
  IntMatrix e;
  try {
    e = exponent_matrix(sub.generators(), super);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NotInSpan) fail(ErrorCode::NotSubgroup, "U is not contained in V");
    throw;
  }
  if (e.rows() != super.size()) fail(ErrorCode::NotSubgroup, "U has infinite index in V");
  if (e.rows() == 0) return 1;
  return lattice_index(e, IntMatrix::identity(super.size()));
}

UnitBasis totally_positive_subgroup(std::span<const FieldElement> units, bool include_minus_one) {
  if (units.empty()) fail(ErrorCode::ShapeError, "no units supplied");
  const FieldPtr field = units.front().field();
  const NumberField& k = *field;
  const FieldElement minus_one = -k.one();
  std::vector<FieldElement> free;
  for (const auto& u : units) {
    if (!is_unit(u)) fail(ErrorCode::NotUnit, "not a unit: " + u.to_string());
    if (u == minus_one) {
      include_minus_one = true;
      continue;
    }
    if (u.is_one()) continue;
    free.push_back(u);
  }
  auto emb = k.embeddings(128);
  const std::size_t s = k.signature().real;
  auto signs = [&](const FieldElement& a) {
    std::vector<int> v;
    for (unsigned bits = 128;; bits *= 2) {
      auto e = k.embeddings(bits);
      v.clear();
      bool ok = true;
      for (const auto& pl : e->places) {
        if (!pl.real) continue;
        Interval x = embed_real(a, pl, e->prec);
        if (x.contains_zero()) ok = false;
        v.push_back(x.is_negative() ? 1 : 0);
      }
      if (ok) return v;
      if (bits > 8192) fail(ErrorCode::Internal, "sign not decided");
    }
  };
  const std::size_t r = free.size();
  IntMatrix sign_matrix(r + (include_minus_one ? 1 : 0), s);
  for (std::size_t i = 0; i < r; ++i) {
    auto v = signs(free[i]);
    for (std::size_t j = 0; j < s; ++j) sign_matrix(i, j) = v[j];
  }
  if (include_minus_one)
    for (std::size_t j = 0; j < s; ++j) sign_matrix(r, j) = 1;
  IntVector twos(s, Int(2));
  IntMatrix kernel = left_kernel_mod(sign_matrix, twos);
  // Project to the free part; the HNF keeps the projection a basis.
  IntMatrix proj(0, r);
  for (std::size_t i = 0; i < kernel.rows(); ++i) {
    IntVector z(kernel.row(i).begin(), kernel.row(i).begin() + static_cast<std::ptrdiff_t>(r));
    proj.append_row(z);
  }
  IntMatrix lattice = hnf_basis(proj);
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < lattice.rows(); ++i) {
    FieldElement w = unit_from_exponents(free, lattice.row(i));
    if (!is_totally_positive(w)) {
      if (!include_minus_one) fail(ErrorCode::Internal, "kernel element is not totally positive");
      w = -w;
      if (!is_totally_positive(w)) fail(ErrorCode::Internal, "sign correction failed");
    }
    out.push_back(w);
  }
  return make_unit_basis(field, std::move(out), UnitProvenance::Input);
}

AdmissibilityCertificate is_admissible(const UnitSubgroup& group) {
  AdmissibilityCertificate cert;
  const NumberField& k = *group.field();
  const Signature sig = k.signature();
  cert.cited_definition_only = sig.complex > 1;
  for (const auto& g : group.generators())
    if (!is_totally_positive(g)) {
      cert.failing_clause = "generators are not all totally positive";
      return cert;
    }
  if (group.rank() != sig.real) {
    cert.failing_clause = "rank " + std::to_string(group.rank()) + " differs from s = " + std::to_string(sig.real);
    return cert;
  }
  for (unsigned bits = 128; bits <= 4096; bits *= 2) {
    auto emb = k.embeddings(bits);
    std::vector<std::vector<Interval>> m;
    for (const auto& g : group.generators()) {
      std::vector<Interval> row;
      for (const auto& pl : emb->places)
        if (pl.real) row.push_back(log(embed_real(g, pl, emb->prec)));
      m.push_back(std::move(row));
    }
    Interval d = interval_det(m, emb->prec);
    if (!d.contains_zero()) {
      cert.log_determinant = d;
      cert.admissible = true;
      return cert;
    }
    cert.log_determinant = d;
  }
  cert.failing_clause = "real log determinant not certified nonzero";
  return cert;
}

SimpleTypeResult is_simple_type(const UnitSubgroup& group) {
  const NumberField& k = *group.field();
  const std::size_t n = k.degree();
  SimpleTypeResult res;
  for (const auto& g : group.generators())
    if (static_cast<std::size_t>(min_poly(g).degree()) == n) {
      res.simple = true;
      res.span_dimension = n;
      res.span_basis = RatMatrix::identity(n);
      return res;
    }
  // Close span{1, g_i} under multiplication by the generators.
  std::vector<FieldElement> span{k.one()};
  RatMatrix rows(0, n);
  rows.append_row(k.one().coords());
  std::vector<FieldElement> frontier = span;
  while (!frontier.empty()) {
    std::vector<FieldElement> next;
    for (const auto& x : frontier)
      for (const auto& g : group.generators()) {
        FieldElement y = x * g;
        RatMatrix trial = rows;
        trial.append_row(y.coords());
        if (rank(trial) > rows.rows()) {
          rows = std::move(trial);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  res.span_dimension = rows.rows();
  res.simple = res.span_dimension == n;
  res.span_basis = std::move(rows);
  return res;
}

namespace {

using CLD = std::complex<long double>;

struct CubicEmbedding {
  long double real;
  CLD complex;
};

CubicEmbedding approximate(const FieldElement& a, const EmbeddingSet& emb) {
  CubicEmbedding e{0, 0};
  for (const auto& pl : emb.places) {
    ComplexInterval z = embed(a, pl, emb.prec);
    if (pl.real)
      e.real = z.re.mid_long_double();
    else
      e.complex = CLD(z.re.mid_long_double(), z.im.mid_long_double());
  }
  return e;
}

// Integral element w with sigma_real(w) = x and sigma_complex(w) = z, if any.
std::optional<FieldElement> element_from_embedding(const NumberField& k, const EmbeddingSet& emb, long double x, CLD z) {
  const std::size_t n = k.degree();
  std::vector<CubicEmbedding> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(approximate(k.basis_element(i), emb));
  // Rows: real equation, Re and Im of the complex equation.
  long double m[3][4];
  for (std::size_t i = 0; i < 3; ++i) {
    m[0][i] = b[i].real;
    m[1][i] = b[i].complex.real();
    m[2][i] = b[i].complex.imag();
  }
  m[0][3] = x;
  m[1][3] = z.real();
  m[2][3] = z.imag();
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    for (int j = 0; j < 4; ++j) std::swap(m[c][j], m[p][j]);
    if (m[c][c] == 0) return std::nullopt;
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      long double f = m[r][c] / m[c][c];
      for (int j = c; j < 4; ++j) m[r][j] -= f * m[c][j];
    }
  }
  IntVector coords;
  for (int i = 0; i < 3; ++i) {
    long double v = m[i][3] / m[i][i];
    long double r = std::nearbyint(v);
    if (std::fabs(v - r) >= 0.25L) return std::nullopt;
    coords.emplace_back(std::to_string(static_cast<long long>(r)));
  }
  return k.element(coords);
}

FieldElement normalize_unit(const FieldElement& u, const EmbeddingSet& emb) {
  FieldElement v = u;
  if (approximate(v, emb).real < 0) v = -v;
  if (approximate(v, emb).real < 1) v = inverse(v);
  return v;
}

}  // namespace

UnitBasis rank1_fundamental_unit_search(const FieldPtr& field, const UnitSearchOptions& options) {
  const NumberField& k = *field;
  if (!(k.signature() == Signature{1, 1}))
    fail(ErrorCode::UnsupportedSignature, "rank-one search needs signature (1, 1)");
  auto emb = k.embeddings(128);
  std::vector<CubicEmbedding> b;
  for (std::size_t i = 0; i < 3; ++i) b.push_back(approximate(k.basis_element(i), *emb));

  std::optional<FieldElement> best;
  long double best_value = 0;
  for (long box = std::max(1L, options.initial_box); box <= options.max_box && !best; box *= 2) {
    for (long x0 = -box; x0 <= box; ++x0)
      for (long x1 = -box; x1 <= box; ++x1)
        for (long x2 = -box; x2 <= box; ++x2) {
          long double re = x0 * b[0].real + x1 * b[1].real + x2 * b[2].real;
          CLD c = static_cast<long double>(x0) * b[0].complex + static_cast<long double>(x1) * b[1].complex +
                  static_cast<long double>(x2) * b[2].complex;
          long double nm = re * std::norm(c);
          if (std::fabs(std::fabs(nm) - 1) > 0.5L) continue;
          if (std::fabs(std::fabs(re) - 1) < 1e-9L) continue;  // +-1 and near-torsion
          FieldElement u = k.element(IntVector{Int(x0), Int(x1), Int(x2)});
          if (!is_unit(u)) continue;
          FieldElement v = normalize_unit(u, *emb);
          long double val = approximate(v, *emb).real;
          if (!best || val < best_value) {
            best = v;
            best_value = val;
          }
        }
  }
  if (!best) fail(ErrorCode::SearchExhausted, "no unit found with coordinates up to " + std::to_string(options.max_box));

  // Lower bound for the fundamental unit eps > 1: Smyth (non-reciprocal
  // Mahler measure) always; Artin's |d| < 4 eps^3 + 24 when the order is
  // certified maximal.
  const mpfr_prec_t prec = 128;
  Interval log_eps_min = log(Interval(Rational(13247, 10000), prec));
  std::string bound = "smyth";
  bool maximal = true;
  for (const auto& [p, e] : factor_integer(k.discriminant()))
    if (e >= 2 && !dedekind_maximality_check(k, p)) maximal = false;
  const Int d = ::abs(k.discriminant());
  if (maximal && d > 28) {
    Interval artin = log(Interval(Rational(d - 24) / 4, prec)) / Interval(3L, prec);
    if (artin.lo_rational() > log_eps_min.hi_rational()) {
      log_eps_min = artin;
      bound = "artin";
    }
  }

  FieldElement v = *best;
  std::ostringstream cert;
  for (bool changed = true; changed;) {
    changed = false;
    Interval log_v = log(embed_real(v, emb->places.front(), emb->prec));
    Rational ratio = log_v.hi_rational() / log_eps_min.lo_rational();
    long kmax = floor(ratio).get_si();
    CubicEmbedding ve = approximate(v, *emb);
    for (long kk = 2; kk <= kmax && !changed; ++kk) {
      long double xr = std::pow(ve.real, 1.0L / kk);
      long double mod = std::pow(std::abs(ve.complex), 1.0L / kk);
      long double arg = std::arg(ve.complex);
      for (long j = 0; j < kk && !changed; ++j) {
        CLD z = std::polar(mod, (arg + 2 * std::numbers::pi_v<long double> * j) / kk);
        auto w = element_from_embedding(k, *emb, xr, z);
        if (w && w->is_integral() && pow(*w, Int(kk)) == v) {
          v = normalize_unit(*w, *emb);
          changed = true;
        }
      }
    }
    if (!changed) {
      cert.str("");
      cert << "bound=" << bound << ";log_eps_min>=" << log_eps_min.lo_string(12) << ";kmax=" << kmax
           << ";no k-th roots for 2<=k<=kmax";
    }
  }
  return make_unit_basis(field, {v}, UnitProvenance::SearchedCertified, cert.str());
}

}  // namespace otarith
