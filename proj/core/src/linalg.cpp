#include "otarith/linalg.hpp"

#include <algorithm>
#include <utility>

#include "otarith/errors.hpp"

namespace otarith {

template <class T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) fail(ErrorCode::Internal, "matrix data size mismatch");
}

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::Internal, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::diagonal(std::span<const T> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

template <class T>
void Matrix<T>::append_row(std::span<const T> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) fail(ErrorCode::Internal, "append_row: length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) fail(ErrorCode::Internal, "row_block out of range");
  return Matrix(count, cols_,
                std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
                               data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_)));
}

template <class T>
Matrix<T> Matrix<T>::stacked(const Matrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) fail(ErrorCode::Internal, "stacked: column mismatch");
  std::vector<T> d = data_;
  d.insert(d.end(), below.data_.begin(), below.data_.end());
  return Matrix(rows_ + below.rows_, cols_, std::move(d));
}

template class Matrix<Int>;
template class Matrix<Rational>;

namespace {

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::Internal, "matrix product: shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> vec_times(std::span<const T> x, const Matrix<T>& a) {
  if (x.size() != a.rows()) fail(ErrorCode::Internal, "vector-matrix product: shape mismatch");
  std::vector<T> r(a.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] += x[k] * a(k, j);
  }
  return r;
}

// rows (r, s) <- (x r + y s, u r + v s) on every column.
void combine_rows(IntMatrix& m, std::size_t r, std::size_t s, const Int& x, const Int& y, const Int& u,
                  const Int& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Int a = m(r, j), b = m(s, j);
    m(r, j) = x * a + y * b;
    m(s, j) = u * a + v * b;
  }
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
IntVector operator*(std::span<const Int> x, const IntMatrix& a) { return vec_times(x, a); }
RatVector operator*(std::span<const Rational> x, const RatMatrix& a) { return vec_times(x, a); }

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j))) fail(ErrorCode::NonIntegral, "matrix entry is not an integer");
      r(i, j) = a(i, j).get_num();
    }
  return r;
}

Int common_denominator(std::span<const Rational> v) {
  Int d = 1;
  for (const auto& q : v) d = lcm(d, q.get_den());
  return d;
}

Int common_denominator(const RatMatrix& a) { return common_denominator(std::span<const Rational>(a.data())); }

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::Internal, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Row echelon form over Q in place; returns pivot columns.
std::vector<std::size_t> echelon(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::Internal, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(k, p);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return echelon(m).size();
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::Internal, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rational f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::optional<RatVector> solve_left(const RatMatrix& a, std::span<const Rational> b) {
  // x a = b  <=>  a^T x^T = b^T.
  if (b.size() != a.cols()) fail(ErrorCode::Internal, "solve_left: shape mismatch");
  const std::size_t unknowns = a.rows();
  RatMatrix aug(a.cols(), unknowns + 1);
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) aug(i, j) = a(j, i);
    aug(i, unknowns) = b[i];
  }
  auto pivots = echelon(aug);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;
  RatVector x(unknowns);
  for (std::size_t r = pivots.size(); r-- > 0;) {
    std::size_t c = pivots[r];
    Rational s = aug(r, unknowns);
    for (std::size_t j = c + 1; j < unknowns; ++j) s -= aug(r, j) * x[j];
    x[c] = s / aug(r, c);
  }
  return x;
}

HermiteForm hnf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  HermiteForm out{a, IntMatrix::identity(m), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h(i, c) == 0) continue;
      Int x, y;
      Int g = xgcd(h(r, c), h(i, c), x, y);
      Int p = h(r, c) / g, q = h(i, c) / g;
      combine_rows(h, r, i, x, y, -q, p);
      combine_rows(u, r, i, x, y, -q, p);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      add_row_multiple(h, i, r, -q);
      add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

IntMatrix hnf_basis(const IntMatrix& a) {
  auto f = hnf(a);
  return f.h.row_block(0, f.rank);
}

IntMatrix hnf_modular(const IntMatrix& a, const Int& modulus) {
  if (modulus <= 0) fail(ErrorCode::Internal, "hnf_modular needs a positive modulus");
  const std::size_t n = a.cols();
  IntMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) w(i, i) = modulus;

  // Phase 1: insert the rows of a, reducing mod the modulus. This keeps
  // rowspan(w) + modulus Z^n equal to the target lattice and pivots dividing it.
  std::vector<Int> v(n);
  auto insert = [&](bool reduce) {
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      Int x, y;
      Int g = xgcd(w(j, j), v[j], x, y);
      Int p = w(j, j) / g, q = v[j] / g;
      for (std::size_t k = j; k < n; ++k) {
        Int wk = w(j, k), vk = v[k];
        w(j, k) = x * wk + y * vk;
        v[k] = p * vk - q * wk;
        if (reduce) {
          w(j, k) = floor_mod(w(j, k), modulus);
          v[k] = floor_mod(v[k], modulus);
        }
      }
      if (reduce && w(j, j) == 0) w(j, j) = modulus;
    }
  };
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) v[j] = floor_mod(a(i, j), modulus);
    insert(true);
  }
  // Phase 2: exact insertion of modulus * e_k recovers the lattice itself.
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(v.begin(), v.end(), Int(0));
    v[k] = modulus;
    insert(false);
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (w(r, r) < 0)
      for (std::size_t k = r; k < n; ++k) w(r, k) = -w(r, k);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(w(i, r), w(r, r));
      if (q != 0)
        for (std::size_t k = r; k < n; ++k) w(i, k) -= q * w(r, k);
    }
  }
  return w;
}

SmithForm snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix left = IntMatrix::identity(m);
  IntMatrix right = IntMatrix::identity(n);
  const std::size_t k = std::min(m, n);

  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pi == m || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      d.swap_rows(t, pi);
      left.swap_rows(t, pi);
      d.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row_multiple(d, i, t, -q);
        add_row_multiple(left, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col_multiple(d, j, t, -q);
        add_col_multiple(right, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and retry.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row_multiple(d, t, bad, Int(1));
      add_row_multiple(left, t, bad, Int(1));
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(left, t);
    }
  }

  SmithForm out;
  out.divisors.resize(k);
  for (std::size_t t = 0; t < k; ++t) out.divisors[t] = d(t, t);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

IntMatrix left_kernel(const IntMatrix& a) {
  auto f = hnf(a);
  if (f.rank == a.rows()) return IntMatrix(0, a.rows());
  return hnf_basis(f.u.row_block(f.rank, a.rows() - f.rank));
}

IntMatrix left_kernel_mod(const IntMatrix& a, std::span<const Int> moduli) {
  if (moduli.size() != a.cols()) fail(ErrorCode::Internal, "left_kernel_mod: one modulus per column");
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix stacked(m + n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) stacked(i, j) = a(i, j);
  for (std::size_t j = 0; j < n; ++j) stacked(m + j, j) = moduli[j];
  IntMatrix k = left_kernel(stacked);
  IntMatrix proj(k.rows(), m);
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) proj(i, j) = k(i, j);
  return hnf_basis(proj);
}

std::optional<IntVector> solve_integral(const IntMatrix& a, std::span<const Int> b) {
  if (b.size() != a.cols()) fail(ErrorCode::Internal, "solve_integral: shape mismatch");
  auto f = hnf(a);
  IntVector y(a.rows());
  IntVector rest(b.begin(), b.end());
  std::size_t c = 0;
  for (std::size_t r = 0; r < f.rank; ++r) {
    while (f.h(r, c) == 0) {
      if (rest[c] != 0) return std::nullopt;
      ++c;
    }
    if (!mpz_divisible_p(rest[c].get_mpz_t(), f.h(r, c).get_mpz_t())) return std::nullopt;
    y[r] = rest[c] / f.h(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) rest[j] -= y[r] * f.h(r, j);
    ++c;
  }
  for (const auto& e : rest)
    if (e != 0) return std::nullopt;
  IntVector x = std::span<const Int>(y) * f.u;
  if (std::span<const Int>(x) * a != IntVector(b.begin(), b.end()))
    fail(ErrorCode::Internal, "solve_integral: back-substitution check failed");
  return x;
}

Int lattice_index(const IntMatrix& sub, const IntMatrix& super) {
  if (sub.rows() != sub.cols() || super.rows() != super.cols() || sub.cols() != super.cols())
    fail(ErrorCode::SingularLattice, "lattice_index needs square bases of equal size");
  Int ds = determinant(sub), dp = determinant(super);
  if (ds == 0 || dp == 0) fail(ErrorCode::SingularLattice, "lattice basis is rank deficient");
  for (std::size_t i = 0; i < sub.rows(); ++i)
    if (!solve_integral(super, sub.row(i))) fail(ErrorCode::NotSublattice, "row is not in the super-lattice");
  return ::abs(ds) / ::abs(dp);
}

IntVector reduce_mod_hnf(std::span<const Int> v, const IntMatrix& h) {
  IntVector r(v.begin(), v.end());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Int q = floor_div(r[i], h(i, i));
    if (q == 0) continue;
    for (std::size_t j = i; j < h.cols(); ++j) r[j] -= q * h(i, j);
  }
  return r;
}

Int content(const IntMatrix& a) {
  Int g = 0;
  for (const auto& e : a.data()) g = gcd(g, e);
  return g;
}

}  // namespace otarith
