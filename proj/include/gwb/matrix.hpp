#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "gwb/ring.hpp"

namespace gwb {

using Vector = std::vector<Rational>;

/// Dense row-major matrix of ring elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n);
  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, size_t cols_if_empty = 0);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  Vector column(size_t c) const;
  Vector row(size_t r) const;
  void set_column(size_t c, const Vector& v);
  bool is_zero() const;

  Matrix transpose() const;
  /// Horizontal concatenation; row counts must agree.
  static Matrix hconcat(const Matrix& a, const Matrix& b);
  /// Matrix made of the listed columns.
  Matrix select_columns(const std::vector<size_t>& cols) const;

  void swap_rows(size_t a, size_t b);
  void swap_cols(size_t a, size_t b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix multiply(const Ring& ring, const Matrix& a, const Matrix& b);
Vector multiply(const Ring& ring, const Matrix& a, const Vector& v);
Matrix subtract(const Ring& ring, const Matrix& a, const Matrix& b);
/// Block-diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);
/// Exact inverse of a square matrix over the ring; throws NotInRing if singular
/// or not invertible over the ring.
Matrix inverse(const Ring& ring, const Matrix& a);

/// One column of a sparse matrix: (row, value) pairs sorted by row, no zeros.
using SparseColumn = std::vector<std::pair<int64_t, Rational>>;

/// Column-compressed sparse matrix; the storage used for chain-complex
/// boundary maps.
struct SparseMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<SparseColumn> columns;

  SparseMatrix() = default;
  SparseMatrix(size_t r, size_t c) : rows(r), cols(c), columns(c) {}

  size_t nonzeros() const;
  Matrix to_dense() const;
  static SparseMatrix from_dense(const Matrix& m);

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

/// Sparse product a*b computed column by column.
SparseMatrix multiply(const Ring& ring, const SparseMatrix& a, const SparseMatrix& b);

}  // namespace gwb
