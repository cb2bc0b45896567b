#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "otarith/bigint.hpp"

namespace otarith {

// Dense row-major matrix. Lattice elements are rows throughout the library;
// a basis matrix B represents the lattice { x * B : x integral }.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data);
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const T> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

  void append_row(std::span<const T> values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  Matrix transpose() const;
  // Rows [first, first + count).
  Matrix row_block(std::size_t first, std::size_t count) const;
  // Stacks `below` under *this (column counts must agree).
  Matrix stacked(const Matrix& below) const;

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntVector operator*(std::span<const Int> x, const IntMatrix& a);
RatVector operator*(std::span<const Rational> x, const RatMatrix& a);

RatMatrix to_rational(const IntMatrix& a);
// Throws if any entry is not an integer.
IntMatrix to_integer(const RatMatrix& a);
// Smallest positive d with d * a integral.
Int common_denominator(const RatMatrix& a);
Int common_denominator(std::span<const Rational> v);

// Exact determinant (fraction-free Bareiss).
Int determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);
// Inverse of a nonsingular square matrix; std::nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& a);
// Some x with x * a = b over the rationals, or nullopt.
std::optional<RatVector> solve_left(const RatMatrix& a, std::span<const Rational> b);

struct HermiteForm {
  IntMatrix h;  // row-style HNF: nonzero rows first, zero rows last
  IntMatrix u;  // unimodular, u * a == h
  std::size_t rank = 0;
};

// Row-style Hermite normal form: h is in echelon form with positive pivots,
// entries above each pivot reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& a);

// HNF basis (square, n x n) of rowspan(a) + modulus * Z^n. `modulus` must be
// positive; entries stay below it, which keeps ideal computations cheap.
IntMatrix hnf_modular(const IntMatrix& a, const Int& modulus);

// The nonzero rows of hnf(a).h.
IntMatrix hnf_basis(const IntMatrix& a);

struct SmithForm {
  IntVector divisors;  // min(rows, cols) entries, d1 | d2 | ... (zeros last)
  IntMatrix left;      // unimodular, rows x rows
  IntMatrix right;     // unimodular, cols x cols
};

// left * a * right == diag(divisors). Pivots are chosen by smallest absolute value.
SmithForm snf(const IntMatrix& a);

// Basis (rows, HNF) of { x in Z^rows : x * a == 0 }.
IntMatrix left_kernel(const IntMatrix& a);

// Basis (rows, HNF) of { x in Z^rows : x * a == 0 mod moduli[j] for every column j }.
IntMatrix left_kernel_mod(const IntMatrix& a, std::span<const Int> moduli);

// |det sub| / |det super| for full-rank square lattices with rowspan(sub) contained
// in rowspan(super). Throws NotSublattice / SingularLattice.
Int lattice_index(const IntMatrix& sub, const IntMatrix& super);

// x with x * a == b over the integers, or nullopt.
std::optional<IntVector> solve_integral(const IntMatrix& a, std::span<const Int> b);

// Reduces v modulo the lattice spanned by a square upper-triangular HNF basis,
// landing in the fundamental domain 0 <= v[i] < h(i, i).
IntVector reduce_mod_hnf(std::span<const Int> v, const IntMatrix& h);

// Content (gcd of all entries).
Int content(const IntMatrix& a);

}  // namespace otarith
