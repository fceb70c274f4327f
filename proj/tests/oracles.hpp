#pragma once

// Reference computations written independently of the library: plain dense
// arithmetic over boost::multiprecision integers and int64 residues, with
// no shared code paths beyond the data being compared.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<Big>>;

inline BigMatrix zeros(size_t rows, size_t cols) { return BigMatrix(rows, std::vector<Big>(cols)); }

/// Nonzero invariant factors by the textbook pivoting algorithm: move the
/// smallest entry to the corner, clear its row and column by division with
/// remainder, and fold in any row whose entries the pivot does not divide.
inline std::vector<Big> invariant_factors(BigMatrix a) {
  const size_t m = a.size();
  const size_t n = m == 0 ? 0 : a[0].size();
  std::vector<Big> out;
  for (size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      size_t pi = m, pj = n;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return out;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        const Big q = a[i][t] / a[t][t];
        for (size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        const Big q = a[t][j] / a[t][t];
        for (size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      size_t bad = m;
      for (size_t i = t + 1; i < m && bad == m; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

/// Invariant factors from determinantal divisors: d_k = gcd of all k x k
/// minors, factor_k = d_k / d_{k-1}. Exponential; for tiny matrices only.
inline Big determinant(const BigMatrix& a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Big det = 0;
  for (size_t c = 0; c < n; ++c) {
    BigMatrix minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Big> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const Big term = a[0][c] * determinant(minor);
    det += (c % 2 == 0) ? term : Big(-term);
  }
  return det;
}

inline void subsets(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& visit) {
  std::vector<size_t> pick(k);
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
    if (depth == k) {
      visit(pick);
      return;
    }
    for (size_t i = start; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

inline std::vector<Big> determinantal_factors(const BigMatrix& a) {
  const size_t m = a.size();
  const size_t n = m == 0 ? 0 : a[0].size();
  std::vector<Big> out;
  Big prev = 1;
  for (size_t k = 1; k <= std::min(m, n); ++k) {
    Big d = 0;
    subsets(m, k, [&](const std::vector<size_t>& rows) {
      subsets(n, k, [&](const std::vector<size_t>& cols) {
        BigMatrix sub(k, std::vector<Big>(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) sub[i][j] = a[rows[i]][cols[j]];
        d = boost::multiprecision::gcd(d, Big(abs(determinant(sub))));
      });
    });
    if (d == 0) break;
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

/// Rank over F_p by Gaussian elimination on residues.
inline size_t rank_mod_p(const BigMatrix& a, int64_t p) {
  const size_t m = a.size();
  const size_t n = m == 0 ? 0 : a[0].size();
  std::vector<std::vector<int64_t>> r(m, std::vector<int64_t>(n));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) {
      Big v = a[i][j] % p;
      if (v < 0) v += p;
      r[i][j] = static_cast<int64_t>(v);
    }
  auto inv = [p](int64_t x) {
    int64_t result = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return result;
  };
  size_t rank = 0;
  for (size_t c = 0; c < n && rank < m; ++c) {
    size_t piv = rank;
    while (piv < m && r[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(r[rank], r[piv]);
    const int64_t s = inv(r[rank][c]);
    for (size_t i = 0; i < m; ++i) {
      if (i == rank || r[i][c] == 0) continue;
      const int64_t f = r[i][c] * s % p;
      for (size_t j = c; j < n; ++j) r[i][j] = ((r[i][j] - f * r[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// A finite group given by its multiplication table, element 0 the identity,
/// with a character into {+1, -1} for the coefficients.
struct Group {
  std::vector<std::vector<size_t>> mul;
  std::vector<int> chi;
  size_t order() const { return mul.size(); }
};

inline Group cyclic(size_t m, bool sign = false) {
  Group g;
  g.mul.assign(m, std::vector<size_t>(m));
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) g.mul[a][b] = (a + b) % m;
  for (size_t a = 0; a < m; ++a) g.chi.push_back(sign && a % 2 == 1 ? -1 : 1);
  return g;
}

/// S3 as permutations of {0,1,2}, identity first; chi is the sign when asked.
inline Group symmetric3(bool sign = false) {
  std::vector<std::array<size_t, 3>> perms;
  std::array<size_t, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  Group g;
  const size_t n = perms.size();
  g.mul.assign(n, std::vector<size_t>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      std::array<size_t, 3> c{};
      for (size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      g.mul[a][b] = static_cast<size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  for (const auto& q : perms) {
    int inversions = 0;
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j)
        if (q[i] > q[j]) ++inversions;
    g.chi.push_back(sign && inversions % 2 == 1 ? -1 : 1);
  }
  return g;
}

/// Unnormalized bar boundary ∂_n : Z[G^n] → Z[G^{n-1}] with coefficients in
/// the character: (g1..gn) ↦ chi(g1)(g2..gn) + Σ (-1)^i (..g_i g_{i+1}..)
/// + (-1)^n (g1..g_{n-1}). Tuples are indexed in base |G|, first entry most
/// significant.
inline BigMatrix bar_boundary(const Group& g, size_t n) {
  const size_t q = g.order();
  size_t rows = 1, cols = 1;
  for (size_t i = 0; i + 1 < n; ++i) rows *= q;
  cols = n == 0 ? 1 : rows * q;
  if (n == 0) return zeros(0, 1);
  BigMatrix d = zeros(rows, cols);
  std::vector<size_t> t(n);
  auto index = [q](const std::vector<size_t>& v) {
    size_t k = 0;
    for (size_t x : v) k = k * q + x;
    return k;
  };
  for (size_t col = 0; col < cols; ++col) {
    size_t c = col;
    for (size_t i = n; i-- > 0;) {
      t[i] = c % q;
      c /= q;
    }
    std::vector<size_t> face(t.begin() + 1, t.end());
    d[index(face)][col] += g.chi[t[0]];
    for (size_t i = 1; i < n; ++i) {
      std::vector<size_t> f;
      for (size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        f.push_back(k == i - 1 ? g.mul[t[i - 1]][t[i]] : t[k]);
      }
      d[index(f)][col] += (i % 2 == 0) ? 1 : -1;
    }
    std::vector<size_t> last(t.begin(), t.end() - 1);
    d[index(last)][col] += (n % 2 == 0) ? 1 : -1;
  }
  return d;
}

struct Homology {
  size_t free_rank = 0;
  std::vector<Big> torsion;  // factors > 1
};

/// H_0..H_top of the bar complex over Z.
inline std::vector<Homology> group_homology_z(const Group& g, size_t top) {
  std::vector<std::vector<Big>> factors;
  std::vector<size_t> dims;
  size_t dim = 1;
  for (size_t n = 0; n <= top + 1; ++n) {
    dims.push_back(dim);
    factors.push_back(n == 0 ? std::vector<Big>{} : invariant_factors(bar_boundary(g, n)));
    dim *= g.order();
  }
  std::vector<Homology> out;
  for (size_t n = 0; n <= top; ++n) {
    Homology h;
    h.free_rank = dims[n] - factors[n].size() - factors[n + 1].size();
    for (const auto& f : factors[n + 1])
      if (f > 1) h.torsion.push_back(f);
    out.push_back(h);
  }
  return out;
}

/// dim H_n over F_p of the same complex.
inline std::vector<size_t> group_homology_fp(const Group& g, size_t top, int64_t p) {
  std::vector<size_t> ranks{0}, dims;
  size_t dim = 1;
  for (size_t n = 0; n <= top + 1; ++n) {
    dims.push_back(dim);
    if (n > 0) ranks.push_back(rank_mod_p(bar_boundary(g, n), p));
    dim *= g.order();
  }
  std::vector<size_t> out;
  for (size_t n = 0; n <= top; ++n) out.push_back(dims[n] - ranks[n] - ranks[n + 1]);
  return out;
}

/// Composable n-tuples counted by brute force over all arrow tuples.
template <class Source, class Range>
size_t count_composable(size_t arrows, size_t n, Source source, Range range) {
  if (n == 0) return 0;
  size_t total = 0;
  std::vector<size_t> t(n, 0);
  for (;;) {
    bool ok = true;
    for (size_t i = 0; i + 1 < n && ok; ++i) ok = source(t[i]) == range(t[i + 1]);
    if (ok) ++total;
    size_t k = n;
    while (k > 0 && ++t[k - 1] == arrows) t[--k] = 0;
    if (k == 0) break;
  }
  return total;
}

}  // namespace oracle
