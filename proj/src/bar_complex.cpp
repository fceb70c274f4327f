#include "gwb/bar_complex.hpp"

#include <algorithm>
#include <exception>

#include "gwb/errors.hpp"

namespace gwb {

UnitId DegreeBasis::block_unit(const FiniteGroupoid& g, size_t i) const {
  if (tuples.arity() == 0) return static_cast<UnitId>(i);
  return g.source(tuples.tuple(i)[tuples.arity() - 1]);
}

namespace {

DegreeBasis make_basis(const GModule& m, size_t n, const BarOptions& opts) {
  const FiniteGroupoid& g = *m.groupoid();
  DegreeBasis b{opts.normalized ? nondegenerate_tuples(g, n, opts.tuple_cap) : composable_tuples(g, n, opts.tuple_cap),
                {}};
  b.offset.resize(b.tuples.size() + 1);
  size_t total = 0;
  for (size_t i = 0; i < b.tuples.size(); ++i) {
    b.offset[i] = total;
    total += m.rank(b.block_unit(g, i));
  }
  b.offset.back() = total;
  return b;
}

// Accumulates (row, value) pairs for one column.
struct ColumnBuilder {
  const Ring& ring;
  std::vector<std::pair<int64_t, Rational>> entries;

  void add(size_t row, const Rational& v) {
    if (!v.is_zero()) entries.emplace_back(static_cast<int64_t>(row), v);
  }
  SparseColumn finish() {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseColumn out;
    for (auto& [r, v] : entries) {
      if (!out.empty() && out.back().first == r) {
        out.back().second = ring.add(out.back().second, v);
        if (out.back().second.is_zero()) out.pop_back();
      } else {
        out.emplace_back(r, std::move(v));
      }
    }
    return out;
  }
};

// Columns of ∂_n for tuple i of the degree-n basis.
void boundary_columns(const GModule& m, const DegreeBasis& src, const DegreeBasis& dst, size_t n, size_t i,
                      bool normalized, std::vector<SparseColumn>& out) {
  const FiniteGroupoid& g = *m.groupoid();
  const Ring& ring = m.ring();
  const ArrowId* t = src.tuples.tuple(i);
  const size_t width = src.offset[i + 1] - src.offset[i];
  const Rational one(1), minus_one = ring.neg(Rational(1));
  std::vector<ArrowId> face(n > 0 ? n - 1 : 0);

  auto locate = [&](const std::vector<ArrowId>& f, UnitId unit_if_empty) -> std::optional<size_t> {
    if (n == 1) return static_cast<size_t>(unit_if_empty);
    return dst.tuples.find(f);
  };

  std::vector<ColumnBuilder> cols(width, ColumnBuilder{ring, {}});
  // d_0 and the inner faces keep the fiber coordinate.
  for (size_t k = 0; k < n; ++k) {
    // k = 0 drops g_1; k = 1..n-1 composes g_k∘g_{k+1} (0-based t[k-1]∘t[k]).
    bool degenerate = false;
    if (k == 0) {
      std::copy(t + 1, t + n, face.begin());
    } else {
      size_t w = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j == k - 1) {
          ArrowId c = g.compose(t[j], t[j + 1]);
          if (normalized && g.is_unit_arrow(c)) degenerate = true;
          face[w++] = c;
          ++j;
        } else {
          face[w++] = t[j];
        }
      }
    }
    if (degenerate) continue;
    auto idx = locate(face, g.source(t[0]));
    if (!idx) throw std::logic_error("face tuple missing from basis");
    const Rational& sign = (k % 2 == 0) ? one : minus_one;
    for (size_t j = 0; j < width; ++j) cols[j].add(dst.offset[*idx] + j, sign);
  }
  // Last face: drop g_n and act on the fiber.
  {
    std::copy(t, t + n - 1, face.begin());
    auto idx = locate(face, g.range(t[n - 1]));
    if (!idx) throw std::logic_error("face tuple missing from basis");
    const Matrix& act = m.action(t[n - 1]);
    const bool negate = n % 2 == 1;
    for (size_t j = 0; j < width; ++j)
      for (size_t r = 0; r < act.rows(); ++r) {
        const Rational& v = act(r, j);
        if (!v.is_zero()) cols[j].add(dst.offset[*idx] + r, negate ? ring.neg(v) : v);
      }
  }
  for (size_t j = 0; j < width; ++j) out[src.offset[i] + j] = cols[j].finish();
}

SparseMatrix relation_matrix(const GModule& m, const DegreeBasis& b) {
  const FiniteGroupoid& g = *m.groupoid();
  SparseMatrix rel(b.rank(), 0);
  for (size_t i = 0; i < b.tuples.size(); ++i) {
    const Fiber& f = m.fiber(b.block_unit(g, i));
    if (f.is_free()) continue;
    for (size_t c = 0; c < f.relations.cols(); ++c) {
      SparseColumn col;
      for (size_t r = 0; r < f.rank; ++r)
        if (!f.relations(r, c).is_zero()) col.emplace_back(static_cast<int64_t>(b.offset[i] + r), f.relations(r, c));
      rel.columns.push_back(std::move(col));
      ++rel.cols;
    }
  }
  return rel;
}

}  // namespace

ChainComplex bar_complex(const GModule& m, size_t n_max, const BarOptions& opts) {
  ChainComplex c;
  c.ring = m.ring();
  c.normalized = opts.normalized;
  for (size_t n = 0; n <= n_max; ++n) c.bases.push_back(make_basis(m, n, opts));
  c.boundaries.emplace_back(0, c.bases[0].rank());
  for (size_t n = 1; n <= n_max; ++n) {
    const DegreeBasis& src = c.bases[n];
    const DegreeBasis& dst = c.bases[n - 1];
    SparseMatrix d(dst.rank(), src.rank());
    const auto count = static_cast<int64_t>(src.tuples.size());
    if (opts.parallel) {
      std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64)
      for (int64_t i = 0; i < count; ++i) {
        try {
          boundary_columns(m, src, dst, n, static_cast<size_t>(i), opts.normalized, d.columns);
        } catch (...) {
#pragma omp critical(gwb_bar_error)
          error = std::current_exception();
        }
      }
      if (error) std::rethrow_exception(error);
    } else {
      for (int64_t i = 0; i < count; ++i)
        boundary_columns(m, src, dst, n, static_cast<size_t>(i), opts.normalized, d.columns);
    }
    c.boundaries.push_back(std::move(d));
  }
  for (size_t n = 0; n <= n_max; ++n) c.relations.push_back(relation_matrix(m, c.bases[n]));
  return c;
}

std::optional<std::pair<size_t, size_t>> first_nonzero_square(const ChainComplex& c) {
  for (size_t n = 1; n + 1 <= c.top(); ++n) {
    SparseMatrix sq = multiply(c.ring, c.boundaries[n], c.boundaries[n + 1]);
    for (size_t j = 0; j < sq.cols; ++j)
      if (!sq.columns[j].empty()) return std::make_pair(n + 1, j);
  }
  return std::nullopt;
}

}  // namespace gwb
