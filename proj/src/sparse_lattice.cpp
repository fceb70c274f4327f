#include "gwb/sparse_lattice.hpp"

#include <algorithm>

#include "gwb/errors.hpp"

namespace gwb {
namespace {

// a*x + b*y
SparseColumn combine(const Ring& ring, const Rational& a, const SparseColumn& x, const Rational& b,
                     const SparseColumn& y) {
  SparseColumn out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  auto push = [&](int64_t r, Rational v) {
    if (!v.is_zero()) out.emplace_back(r, std::move(v));
  };
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      if (!a.is_zero()) push(x[i].first, ring.mul(a, x[i].second));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      if (!b.is_zero()) push(y[j].first, ring.mul(b, y[j].second));
      ++j;
    } else {
      push(x[i].first, ring.add(ring.mul(a, x[i].second), ring.mul(b, y[j].second)));
      ++i;
      ++j;
    }
  }
  return out;
}

void scale(const Ring& ring, SparseColumn& col, const Rational& c) {
  for (auto& e : col) e.second = ring.mul(e.second, c);
}

}  // namespace

EchelonLattice::EchelonLattice(const Ring& ring, size_t dim) : ring_(ring), dim_(dim), pivot_of_row_(dim, -1) {}

EchelonLattice::EchelonLattice(const Ring& ring, const SparseMatrix& generators)
    : EchelonLattice(ring, generators.rows) {
  for (const auto& c : generators.columns) add(c);
}

void EchelonLattice::make_canonical(SparseColumn& col, SparseColumn& coeffs) const {
  Rational unit;
  ring_.associate(col.back().second, &unit);
  if (unit == Rational(1)) return;
  const Rational inv = ring_.inverse(unit);
  scale(ring_, col, inv);
  scale(ring_, coeffs, inv);
}

std::optional<SparseColumn> EchelonLattice::add(const SparseColumn& v) {
  for (const auto& [r, x] : v)
    if (r < 0 || static_cast<size_t>(r) >= dim_) throw DimensionMismatch("generator row out of range");
  SparseColumn col;
  for (const auto& [r, x] : v) {
    Rational y = ring_.normalize(x);
    if (!y.is_zero()) col.emplace_back(r, std::move(y));
  }
  SparseColumn coeffs{{static_cast<int64_t>(generators_), Rational(1)}};
  ++generators_;
  while (!col.empty()) {
    const int64_t low = col.back().first;
    const int64_t at = pivot_of_row_[static_cast<size_t>(low)];
    if (at < 0) {
      make_canonical(col, coeffs);
      pivot_of_row_[static_cast<size_t>(low)] = static_cast<int64_t>(pivots_.size());
      pivots_.push_back({std::move(col), std::move(coeffs)});
      return std::nullopt;
    }
    Pivot& p = pivots_[static_cast<size_t>(at)];
    const Rational a = col.back().second;
    const Rational b = p.col.back().second;
    if (ring_.divides(b, a)) {
      const Rational q = ring_.neg(ring_.exact_quotient(a, b));
      col = combine(ring_, Rational(1), col, q, p.col);
      coeffs = combine(ring_, Rational(1), coeffs, q, p.coeffs);
    } else {
      // [[s, b/g], [t, -a/g]] has determinant -1.
      const Ring::Bezout e = ring_.gcdext(a, b);
      const Rational bg = ring_.exact_quotient(b, e.g);
      const Rational ag = ring_.neg(ring_.exact_quotient(a, e.g));
      SparseColumn new_col = combine(ring_, e.s, col, e.t, p.col);
      SparseColumn new_coeffs = combine(ring_, e.s, coeffs, e.t, p.coeffs);
      col = combine(ring_, bg, col, ag, p.col);
      coeffs = combine(ring_, bg, coeffs, ag, p.coeffs);
      make_canonical(new_col, new_coeffs);
      p.col = std::move(new_col);
      p.coeffs = std::move(new_coeffs);
    }
  }
  relations_.push_back(coeffs);
  return coeffs;
}

std::optional<SparseColumn> EchelonLattice::solve(const SparseColumn& v) const {
  SparseColumn col;
  for (const auto& [r, x] : v) {
    if (r < 0 || static_cast<size_t>(r) >= dim_) throw DimensionMismatch("vector row out of range");
    Rational y = ring_.normalize(x);
    if (!y.is_zero()) col.emplace_back(r, std::move(y));
  }
  SparseColumn x;
  while (!col.empty()) {
    const int64_t at = pivot_of_row_[static_cast<size_t>(col.back().first)];
    if (at < 0) return std::nullopt;
    const Pivot& p = pivots_[static_cast<size_t>(at)];
    const Rational& b = p.col.back().second;
    if (!ring_.divides(b, col.back().second)) return std::nullopt;
    const Rational q = ring_.exact_quotient(col.back().second, b);
    col = combine(ring_, Rational(1), col, ring_.neg(q), p.col);
    x = combine(ring_, Rational(1), x, q, p.coeffs);
  }
  return x;
}

SparseMatrix EchelonLattice::basis() const {
  SparseMatrix out(dim_, pivots_.size());
  for (size_t j = 0; j < pivots_.size(); ++j) out.columns[j] = pivots_[j].col;
  return out;
}

SparseMatrix EchelonLattice::relations() const {
  SparseMatrix out(generators_, relations_.size());
  for (size_t j = 0; j < relations_.size(); ++j) out.columns[j] = relations_[j];
  return out;
}

SparseMatrix sparse_kernel(const Ring& ring, const SparseMatrix& a) { return EchelonLattice(ring, a).relations(); }

bool same_lattice(const Ring& ring, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows) throw DimensionMismatch("lattices live in different ambient ranks");
  const EchelonLattice la(ring, a);
  const EchelonLattice lb(ring, b);
  if (la.rank() != lb.rank()) return false;
  return std::all_of(b.columns.begin(), b.columns.end(), [&](const SparseColumn& c) { return la.contains(c); }) &&
         std::all_of(a.columns.begin(), a.columns.end(), [&](const SparseColumn& c) { return lb.contains(c); });
}

SparseMatrix sparse_identity(size_t n) {
  SparseMatrix out(n, n);
  for (size_t i = 0; i < n; ++i) out.columns[i].emplace_back(static_cast<int64_t>(i), Rational(1));
  return out;
}

SparseMatrix hconcat(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows) throw DimensionMismatch("hconcat row counts differ");
  SparseMatrix out = a;
  out.cols += b.cols;
  out.columns.insert(out.columns.end(), b.columns.begin(), b.columns.end());
  return out;
}

SparseMatrix negated(const Ring& ring, const SparseMatrix& a) {
  SparseMatrix out = a;
  for (auto& c : out.columns)
    for (auto& e : c) e.second = ring.neg(e.second);
  return out;
}

SparseMatrix transpose(const SparseMatrix& a) {
  SparseMatrix out(a.cols, a.rows);
  for (size_t j = 0; j < a.cols; ++j)
    for (const auto& [i, v] : a.columns[j]) out.columns[static_cast<size_t>(i)].emplace_back(static_cast<int64_t>(j), v);
  return out;
}

SparseMatrix top_rows(const SparseMatrix& a, size_t rows) {
  SparseMatrix out(rows, a.cols);
  for (size_t j = 0; j < a.cols; ++j)
    for (const auto& e : a.columns[j])
      if (static_cast<size_t>(e.first) < rows) out.columns[j].push_back(e);
  return out;
}

}  // namespace gwb
