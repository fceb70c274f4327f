#include "gwb/boundary_reduction.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "gwb/smith.hpp"

namespace gwb {

namespace {

using IntColumn = std::vector<std::pair<int64_t, Integer>>;

class Reducer {
 public:
  explicit Reducer(const Ring& ring) : ring_(ring), kind_(ring.kind()) {
    if (kind_ == Ring::Kind::PrimeField) p_ = Integer(ring.parameter());
  }

  IntColumn to_integer(const SparseColumn& col) const {
    Integer l = 1;
    for (const auto& [r, v] : col)
      if (!v.is_integer()) l = l / gcd(l, v.den()) * v.den();
    IntColumn out;
    out.reserve(col.size());
    for (const auto& [r, v] : col) {
      Integer x = v.num() * (l / v.den());
      if (kind_ == Ring::Kind::PrimeField) x = mod(x);
      if (!x.is_zero()) out.emplace_back(r, std::move(x));
    }
    return out;
  }

  bool is_unit(const Integer& v) const { return ring_.is_unit_integer(v); }

  // Divide out the unit part of the content (or make the low entry 1 over Fp).
  void normalize(IntColumn& col) const {
    if (col.empty()) return;
    switch (kind_) {
      case Ring::Kind::Integers:
        return;
      case Ring::Kind::PrimeField: {
        Integer inv = inverse_mod(col.back().second);
        if (inv.is_one()) return;
        for (auto& e : col) e.second = mod(e.second * inv);
        return;
      }
      case Ring::Kind::Rationals:
      case Ring::Kind::LocalizedIntegers: {
        Integer g = 0;
        for (const auto& e : col) {
          g = gcd(g, e.second);
          if (g.is_one()) break;
        }
        if (kind_ == Ring::Kind::LocalizedIntegers) g = g / ring_.strip_inverted(g);
        if (col.back().second.sign() < 0) g = -g;
        if (g.is_one()) return;
        for (auto& e : col) e.second = e.second / g;
        return;
      }
    }
  }

  // a*x + b*y, merged by row.
  IntColumn combine(const Integer& a, const IntColumn& x, const Integer& b, const IntColumn& y) const {
    IntColumn out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    auto push = [&](int64_t r, Integer v) {
      if (kind_ == Ring::Kind::PrimeField) v = mod(v);
      if (!v.is_zero()) out.emplace_back(r, std::move(v));
    };
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        if (!a.is_zero()) push(x[i].first, a * x[i].second);
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        if (!b.is_zero()) push(y[j].first, b * y[j].second);
        ++j;
      } else {
        push(x[i].first, a * x[i].second + b * y[j].second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Eliminates the low entry of `col` against `piv` whose low entry is a unit.
  IntColumn eliminate_unit(const IntColumn& col, const IntColumn& piv) const {
    const Integer& a = col.back().second;
    const Integer& b = piv.back().second;
    switch (kind_) {
      case Ring::Kind::Integers:
        return combine(1, col, -(a * b), piv);  // b = +-1
      case Ring::Kind::PrimeField:
        return combine(1, col, mod(-a), piv);  // pivot low entry normalised to 1
      default: {
        if (b.is_one()) return combine(1, col, -a, piv);
        Integer q, r;
        Integer::divmod_trunc(a, b, q, r);
        if (r.is_zero()) return combine(1, col, -q, piv);
        Integer g = gcd(a, b);
        return combine(b / g, col, -(a / g), piv);
      }
    }
  }

  // Position-wise elimination used after the main pass.
  IntColumn eliminate_at(const IntColumn& col, const Integer& a, const IntColumn& piv) const {
    const Integer& b = piv.back().second;
    if (kind_ == Ring::Kind::Integers) return combine(1, col, -(a * b), piv);
    Integer g = gcd(a, b);
    return combine(b / g, col, -(a / g), piv);
  }

 private:
  Integer mod(const Integer& x) const {
    if (x.is_small() && p_.is_small()) {
      const int64_t p = p_.small_value();
      const int64_t v = x.small_value() % p;
      return Integer(v < 0 ? v + p : v);
    }
    Integer q, r;
    Integer::divmod_floor(x, p_, q, r);
    return r;
  }

  Integer inverse_mod(const Integer& x) const {
    const Integer v = mod(x);
    if (v.is_one()) return v;
    return mod(extended_gcd(v, p_).s);
  }

  const Ring& ring_;
  Ring::Kind kind_;
  Integer p_ = 0;
};

// Word-size reduction over Z or Fp. Throws Overflow when an entry leaves
// int64, in which case the caller restarts with Integer arithmetic.
struct Overflow {};

using SmallColumn = std::vector<std::pair<int64_t, int64_t>>;

class SmallReducer {
 public:
  SmallReducer(bool field, int64_t p) : field_(field), p_(p) {}

  static int64_t mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static int64_t add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  int64_t mod(int64_t v) const {
    v %= p_;
    return v < 0 ? v + p_ : v;
  }
  int64_t inverse(int64_t v) const {
    int64_t a = mod(v), m = p_, x0 = 1, x1 = 0;
    while (m != 0) {
      const int64_t q = a / m;
      std::tie(a, m) = std::make_pair(m, a - q * m);
      std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    }
    return mod(x0);
  }
  bool is_unit(int64_t v) const { return field_ ? v != 0 : (v == 1 || v == -1); }

  void normalize(SmallColumn& col) const {
    if (!field_ || col.empty() || col.back().second == 1) return;
    const int64_t inv = inverse(col.back().second);
    for (auto& e : col) e.second = mod(e.second * inv);
  }

  // out = a*x + b*y
  void combine(int64_t a, const SmallColumn& x, int64_t b, const SmallColumn& y, SmallColumn& out) const {
    out.clear();
    size_t i = 0, j = 0;
    auto push = [&](int64_t r, int64_t v) {
      if (field_) v = mod(v);
      if (v != 0) out.emplace_back(r, v);
    };
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        if (a != 0) push(x[i].first, mul(a, x[i].second));
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        if (b != 0) push(y[j].first, mul(b, y[j].second));
        ++j;
      } else {
        push(x[i].first, add(mul(a, x[i].second), mul(b, y[j].second)));
        ++i;
        ++j;
      }
    }
  }

 private:
  bool field_;
  int64_t p_;
};

struct Pivots {
  std::vector<IntColumn> columns;
  std::vector<int64_t> of_row;  // pivot index per row, -1 when free
};

Pivots reduce_small(const Ring& ring, const SparseMatrix& d) {
  const bool field = ring.kind() == Ring::Kind::PrimeField;
  SmallReducer red(field, field ? ring.parameter() : 0);
  std::vector<SmallColumn> pivots;
  std::vector<int64_t> of_row(d.rows, -1);
  SmallColumn col, scratch, scratch2;
  for (size_t j = 0; j < d.cols; ++j) {
    col.clear();
    for (const auto& [r, v] : d.columns[j]) {
      if (!v.is_integer() || !v.num().is_small()) throw Overflow{};
      const int64_t x = field ? red.mod(v.num().small_value()) : v.num().small_value();
      if (x != 0) col.emplace_back(r, x);
    }
    red.normalize(col);
    while (!col.empty()) {
      const int64_t low = col.back().first;
      const int64_t at = of_row[static_cast<size_t>(low)];
      if (at < 0) {
        of_row[static_cast<size_t>(low)] = static_cast<int64_t>(pivots.size());
        pivots.push_back(col);
        break;
      }
      SmallColumn& piv = pivots[static_cast<size_t>(at)];
      const int64_t a = col.back().second;
      const int64_t b = piv.back().second;
      if (red.is_unit(b)) {
        red.combine(1, col, field ? red.mod(-a) : -SmallReducer::mul(a, b), piv, scratch);
        std::swap(col, scratch);
      } else {
        // Unimodular [[s, t], [b/g, -a/g]] on (col, piv).
        const ExtendedGcd e = extended_gcd(a, b);
        const int64_t g = e.g.small_value();
        red.combine(e.s.small_value(), col, e.t.small_value(), piv, scratch2);
        red.combine(b / g, col, -(a / g), piv, scratch);
        std::swap(col, scratch);
        std::swap(piv, scratch2);
      }
      red.normalize(col);
    }
  }
  Pivots out;
  out.of_row = std::move(of_row);
  out.columns.reserve(pivots.size());
  for (const auto& c : pivots) {
    IntColumn ic;
    ic.reserve(c.size());
    for (const auto& [r, v] : c) ic.emplace_back(r, Integer(v));
    out.columns.push_back(std::move(ic));
  }
  return out;
}

Pivots reduce_big(const Ring& ring, const SparseMatrix& d) {
  Reducer red(ring);
  Pivots out;
  out.of_row.assign(d.rows, -1);
  auto& pivots = out.columns;
  for (size_t j = 0; j < d.cols; ++j) {
    IntColumn col = red.to_integer(d.columns[j]);
    red.normalize(col);
    while (!col.empty()) {
      const int64_t low = col.back().first;
      const int64_t at = out.of_row[static_cast<size_t>(low)];
      if (at < 0) {
        out.of_row[static_cast<size_t>(low)] = static_cast<int64_t>(pivots.size());
        pivots.push_back(std::move(col));
        break;
      }
      IntColumn& piv = pivots[static_cast<size_t>(at)];
      if (red.is_unit(piv.back().second)) {
        col = red.eliminate_unit(col, piv);
      } else {
        // Unimodular [[s, t], [b/g, -a/g]] on (col, piv).
        const Integer a = col.back().second;
        const Integer b = piv.back().second;
        ExtendedGcd e = extended_gcd(a, b);
        IntColumn new_piv = red.combine(e.s, col, e.t, piv);
        col = red.combine(b / e.g, col, -(a / e.g), piv);
        piv = std::move(new_piv);
        red.normalize(piv);
      }
      red.normalize(col);
    }
  }
  return out;
}

}  // namespace

BoundaryRank reduce_boundary(const Ring& ring, const SparseMatrix& d) {
  // Column denominators are units in Q and Z[1/n], so the integer-scaled
  // matrix has the same lattice there; reduce over Z and localize.
  if (ring.kind() == Ring::Kind::Rationals || ring.kind() == Ring::Kind::LocalizedIntegers) {
    BoundaryRank z = reduce_boundary(Ring::integers(), d);
    BoundaryRank out{z.rank, {}};
    if (ring.kind() == Ring::Kind::Rationals) return out;
    for (const auto& t : z.torsion) {
      const Integer stripped = ring.strip_inverted(t.num());
      if (!stripped.is_one()) out.torsion.emplace_back(stripped);
    }
    return out;
  }

  Pivots piv;
  bool small = !(ring.kind() == Ring::Kind::PrimeField && ring.parameter() > (int64_t{1} << 31));
  if (small) {
    try {
      piv = reduce_small(ring, d);
    } catch (const Overflow&) {
      small = false;
    }
  }
  if (!small) piv = reduce_big(ring, d);

  Reducer red(ring);
  auto& pivots = piv.columns;
  auto unit_pivot_at = [&](int64_t row) {
    const int64_t at = piv.of_row[static_cast<size_t>(row)];
    return at >= 0 && red.is_unit(pivots[static_cast<size_t>(at)].back().second) ? at : int64_t{-1};
  };

  BoundaryRank out;
  out.rank = pivots.size();

  // Remaining torsion lives in the columns whose pivot is not a unit.
  std::vector<size_t> nonunit;
  for (size_t c = 0; c < pivots.size(); ++c)
    if (!red.is_unit(pivots[c].back().second)) nonunit.push_back(c);
  if (nonunit.empty()) return out;

  std::vector<int64_t> free_rows;
  std::unordered_map<int64_t, size_t> row_index;
  for (size_t c : nonunit) {
    IntColumn col = pivots[c];
    // Clear every entry sitting on a unit-pivot row, highest row first.
    int64_t bound = std::numeric_limits<int64_t>::max();
    for (;;) {
      int64_t at = -1;
      Integer a;
      for (size_t k = col.size(); k-- > 0;) {
        if (col[k].first >= bound) continue;
        at = unit_pivot_at(col[k].first);
        if (at < 0) continue;
        a = col[k].second;
        bound = col[k].first;
        break;
      }
      if (at < 0) break;
      col = red.eliminate_at(col, a, pivots[static_cast<size_t>(at)]);
      red.normalize(col);
    }
    for (const auto& [row, v] : col) {
      if (unit_pivot_at(row) >= 0) continue;
      if (row_index.emplace(row, free_rows.size()).second) free_rows.push_back(row);
    }
    pivots[c] = std::move(col);
  }

  Matrix dense(free_rows.size(), nonunit.size());
  for (size_t j = 0; j < nonunit.size(); ++j) {
    for (const auto& [row, v] : pivots[nonunit[j]]) {
      auto pos = row_index.find(row);
      if (pos != row_index.end()) dense(pos->second, j) = ring.normalize(Rational(v));
    }
  }
  SmithForm snf = smith_normal_form(ring, dense, false);
  for (const auto& f : snf.diagonal)
    if (!ring.is_unit(f)) out.torsion.push_back(f);
  return out;
}

}  // namespace gwb
