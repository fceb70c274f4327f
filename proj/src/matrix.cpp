#include "gwb/matrix.hpp"

#include <algorithm>
#include <map>

#include "gwb/errors.hpp"

namespace gwb {

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, size_t cols_if_empty) {
  size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::column(size_t c) const {
  Vector v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector Matrix::row(size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_column(size_t c, const Vector& v) {
  for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw DimensionMismatch("hconcat row counts differ");
  Matrix m(a.rows_, a.cols_ + b.cols_);
  for (size_t r = 0; r < a.rows_; ++r) {
    for (size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
  }
  return m;
}

Matrix Matrix::select_columns(const std::vector<size_t>& cols) const {
  Matrix m(rows_, cols.size());
  for (size_t r = 0; r < rows_; ++r)
    for (size_t j = 0; j < cols.size(); ++j) m(r, j) = (*this)(r, cols[j]);
  return m;
}

void Matrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  for (size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void Matrix::swap_cols(size_t a, size_t b) {
  if (a == b) return;
  for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

Matrix multiply(const Ring& ring, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shapes differ");
  Matrix m(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) {
      const Rational& x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        const Rational& y = b(k, j);
        if (y.is_zero()) continue;
        m(i, j) = ring.add(m(i, j), ring.mul(x, y));
      }
    }
  }
  return m;
}

Vector multiply(const Ring& ring, const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shapes differ");
  Vector out(a.rows());
  for (size_t i = 0; i < a.rows(); ++i) {
    Rational acc;
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero() || v[k].is_zero()) continue;
      acc = ring.add(acc, ring.mul(a(i, k), v[k]));
    }
    out[i] = acc;
  }
  return out;
}

Matrix subtract(const Ring& ring, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference shapes differ");
  Matrix m(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m(i, j) = ring.sub(a(i, j), b(i, j));
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Matrix inverse(const Ring& ring, const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const size_t n = a.rows();
  Matrix m = a;
  Matrix inv = Matrix::identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = n;
    for (size_t r = col; r < n; ++r) {
      if (ring.is_unit(m(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) {
      // Over a non-field a unit pivot may only appear after combining rows;
      // fall back to Euclidean row reduction on this column.
      for (;;) {
        size_t best = n;
        for (size_t r = col; r < n; ++r) {
          if (m(r, col).is_zero()) continue;
          if (best == n || ring.norm(m(r, col)) < ring.norm(m(best, col))) best = r;
        }
        if (best == n) throw NotInRing("matrix is singular");
        m.swap_rows(best, col);
        inv.swap_rows(best, col);
        bool done = true;
        for (size_t r = col + 1; r < n; ++r) {
          if (m(r, col).is_zero()) continue;
          Rational q, rem;
          ring.divmod(m(r, col), m(col, col), q, rem);
          for (size_t c = 0; c < n; ++c) {
            m(r, c) = ring.sub(m(r, c), ring.mul(q, m(col, c)));
            inv(r, c) = ring.sub(inv(r, c), ring.mul(q, inv(col, c)));
          }
          if (!m(r, col).is_zero()) done = false;
        }
        if (done) break;
      }
      if (!ring.is_unit(m(col, col))) throw NotInRing("matrix is not invertible over " + ring.tag());
      pivot = col;
    }
    m.swap_rows(pivot, col);
    inv.swap_rows(pivot, col);
    Rational u = ring.inverse(m(col, col));
    for (size_t c = 0; c < n; ++c) {
      m(col, c) = ring.mul(u, m(col, c));
      inv(col, c) = ring.mul(u, inv(col, c));
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      Rational f = m(r, col);
      for (size_t c = 0; c < n; ++c) {
        m(r, c) = ring.sub(m(r, c), ring.mul(f, m(col, c)));
        inv(r, c) = ring.sub(inv(r, c), ring.mul(f, inv(col, c)));
      }
    }
  }
  return inv;
}

size_t SparseMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(rows, cols);
  for (size_t c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[c]) m(static_cast<size_t>(r), c) = v;
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix s(m.rows(), m.cols());
  for (size_t c = 0; c < m.cols(); ++c)
    for (size_t r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) s.columns[c].emplace_back(static_cast<int64_t>(r), m(r, c));
  return s;
}

SparseMatrix multiply(const Ring& ring, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw DimensionMismatch("sparse product shapes differ");
  SparseMatrix out(a.rows, b.cols);
  for (size_t j = 0; j < b.cols; ++j) {
    std::map<int64_t, Rational> acc;
    for (const auto& [k, bv] : b.columns[j]) {
      for (const auto& [i, av] : a.columns[static_cast<size_t>(k)]) {
        auto& slot = acc[i];
        slot = ring.add(slot, ring.mul(av, bv));
      }
    }
    for (auto& [i, v] : acc)
      if (!v.is_zero()) out.columns[j].emplace_back(i, std::move(v));
  }
  return out;
}

}  // namespace gwb
