#include "gwb/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "gwb/errors.hpp"
#include "gwb/sparse_lattice.hpp"

namespace gwb {

ComparisonReport compare_homology(const std::vector<ModuleInvariants>& lhs, const std::vector<ModuleInvariants>& rhs) {
  if (lhs.size() != rhs.size()) throw DimensionMismatch("homology reports cover different degrees");
  ComparisonReport r;
  r.equal = true;
  for (size_t n = 0; n < lhs.size(); ++n) {
    DegreeComparison d{n, lhs[n], rhs[n], lhs[n] == rhs[n]};
    r.equal = r.equal && d.equal;
    r.degrees.push_back(std::move(d));
  }
  return r;
}

ComparisonReport shapiro_verify(const Subgroupoid& h, const GModule& m, size_t n_max, const HomologyOptions& opts) {
  if (m.groupoid() != h.groupoid) throw IncompatibleModules("module does not live on the subgroupoid");
  const GModule induced = induce(h, m);
  return compare_homology(homology(induced, n_max, opts).degrees, homology(m, n_max, opts).degrees);
}

MoritaReport morita_reduce(const GModule& m, size_t n_max, const HomologyOptions& opts) {
  const GroupoidPtr& g = m.groupoid();
  MoritaReport r;
  r.y = transversal(*g);
  const std::vector<int64_t> y(r.y.begin(), r.y.end());
  Restriction res = restrict(g, y);
  r.witness = fullness_idempotent(g, y, m.ring());
  const GModule reduced = restrict_module(res.sub, m);
  r.comparison = compare_homology(homology(m, n_max, opts).degrees, homology(reduced, n_max, opts).degrees);
  return r;
}

namespace {

// The coordinate embedding of a subgroupoid's complex into the ambient one.
SparseMatrix inclusion_matrix(const Subgroupoid& s, const DegreeBasis& sub, const DegreeBasis& amb, size_t n) {
  SparseMatrix out(amb.rank(), sub.rank());
  std::vector<ArrowId> t(std::max<size_t>(n, 1));
  for (size_t i = 0; i < sub.tuples.size(); ++i) {
    if (n == 0) {
      t[0] = s.unit_to_ambient[i];
    } else {
      const ArrowId* st = sub.tuples.tuple(i);
      for (size_t k = 0; k < n; ++k) t[k] = s.arrow_to_ambient[static_cast<size_t>(st[k])];
    }
    const auto j = amb.tuples.find(t.data());
    if (!j) throw std::logic_error("subgroupoid tuple missing from the ambient complex");
    const size_t width = sub.offset[i + 1] - sub.offset[i];
    if (amb.offset[*j + 1] - amb.offset[*j] != width) throw std::logic_error("fiber widths disagree");
    for (size_t w = 0; w < width; ++w)
      out.columns[sub.offset[i] + w].emplace_back(static_cast<int64_t>(amb.offset[*j] + w), Rational(1));
  }
  return out;
}

SparseMatrix cycles(const Ring& ring, const ChainComplex& c, size_t n) {
  if (n == 0) return sparse_identity(c.rank(0));
  return sparse_kernel(ring, c.boundaries[n]);
}

// Basis of {z in span(zb) : image z lies in span(l)}, where `image` holds the
// images of the columns of zb.
SparseMatrix preimage(const Ring& ring, const SparseMatrix& zb, const SparseMatrix& image, const SparseMatrix& l) {
  const SparseMatrix k = sparse_kernel(ring, hconcat(image, negated(ring, l)));
  return multiply(ring, zb, top_rows(k, zb.cols));
}

ModuleInvariants direct_sum_invariants(const Ring& ring, const ModuleInvariants& a, const ModuleInvariants& b) {
  std::vector<Rational> t = a.torsion;
  t.insert(t.end(), b.torsion.begin(), b.torsion.end());
  Matrix d(t.size(), t.size());
  for (size_t i = 0; i < t.size(); ++i) d(i, i) = t[i];
  ModuleInvariants out;
  out.free_rank = a.free_rank + b.free_rank;
  for (const auto& x : smith_normal_form(ring, d, false).diagonal)
    if (!ring.is_unit(x)) out.torsion.push_back(x);
  return out;
}

bool is_invertible(const Ring& ring, const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  const SmithForm s = smith_normal_form(ring, a, false);
  if (s.rank != a.rows()) return false;
  return std::all_of(s.diagonal.begin(), s.diagonal.end(), [&](const Rational& x) { return ring.is_unit(x); });
}

}  // namespace

LesReport les_verify(const GModule& m, const std::vector<int64_t>& u, size_t n_max) {
  const GroupoidPtr& g = m.groupoid();
  const Ring& ring = m.ring();
  if (!m.is_free()) throw IncompatibleModules("the long exact sequence check needs free fibers");
  invariant_submodule(m, u);  // validates U

  LesReport r;
  std::vector<bool> in_u(g->num_units(), false);
  for (int64_t x : u) in_u[static_cast<size_t>(x)] = true;
  std::vector<int64_t> comp;
  for (size_t x = 0; x < g->num_units(); ++x) {
    if (in_u[x]) r.u.push_back(static_cast<UnitId>(x));
    else {
      r.complement.push_back(static_cast<UnitId>(x));
      comp.push_back(static_cast<int64_t>(x));
    }
  }
  const std::vector<int64_t> u_sorted(r.u.begin(), r.u.end());
  const Subgroupoid sa = restrict(g, u_sorted).sub;
  const Subgroupoid sc = restrict(g, comp).sub;

  const size_t top = n_max + 1;
  const BarOptions bo{kDefaultTupleCap, true, false};
  const ChainComplex a = bar_complex(restrict_module(sa, m), top, bo);
  const ChainComplex b = bar_complex(m, top, bo);
  const ChainComplex c = bar_complex(restrict_module(sc, m), top, bo);

  std::vector<SparseMatrix> i_map, p_map;
  const auto& da = a.boundaries;
  const auto& db = b.boundaries;
  const auto& dc = c.boundaries;
  for (size_t n = 0; n <= top; ++n) {
    i_map.push_back(inclusion_matrix(sa, a.bases[n], b.bases[n], n));
    p_map.push_back(transpose(inclusion_matrix(sc, c.bases[n], b.bases[n], n)));
  }

  r.chain_maps = true;
  r.short_exact = true;
  for (size_t n = 1; n <= top; ++n) {
    if (!(multiply(ring, db[n], i_map[n]) == multiply(ring, i_map[n - 1], da[n]))) r.chain_maps = false;
    if (!(multiply(ring, dc[n], p_map[n]) == multiply(ring, p_map[n - 1], db[n]))) r.chain_maps = false;
  }
  for (size_t n = 0; n <= top; ++n) {
    if (multiply(ring, p_map[n], i_map[n]).nonzeros() != 0) r.short_exact = false;
    if (EchelonLattice(ring, i_map[n]).rank() != i_map[n].cols) r.short_exact = false;
    if (!same_lattice(ring, p_map[n], sparse_identity(p_map[n].rows))) r.short_exact = false;
    if (!same_lattice(ring, sparse_kernel(ring, p_map[n]), i_map[n])) r.short_exact = false;
  }

  std::vector<SparseMatrix> za, zb, zc, connecting(top + 1);
  for (size_t n = 0; n <= top; ++n) {
    za.push_back(cycles(ring, a, n));
    zb.push_back(cycles(ring, b, n));
    zc.push_back(cycles(ring, c, n));
  }

  r.connecting.resize(top + 1);
  if (r.chain_maps && r.short_exact) {
    for (size_t n = 1; n <= top; ++n) {
      const EchelonLattice lift(ring, p_map[n]);
      const EchelonLattice back(ring, i_map[n - 1]);
      SparseMatrix d(a.rank(n - 1), zc[n].cols);
      SparseMatrix y(b.rank(n), 1);
      for (size_t j = 0; j < zc[n].cols; ++j) {
        const auto up = lift.solve(zc[n].columns[j]);
        if (!up) throw std::logic_error("cycle of the quotient has no lift");
        y.columns[0] = *up;
        const auto x = back.solve(multiply(ring, db[n], y).columns[0]);
        if (!x) throw std::logic_error("boundary of a lift leaves the subcomplex");
        d.columns[j] = *x;
      }
      connecting[n] = d;
      r.connecting[n] = d.to_dense();
    }

    for (size_t n = 0; n <= n_max; ++n) {
      // H_n(A) → H_n(B): kernel equals the image of the connecting map.
      {
        const SparseMatrix ker = preimage(ring, za[n], multiply(ring, i_map[n], za[n]), db[n + 1]);
        r.nodes.push_back({"A", n, same_lattice(ring, ker, hconcat(connecting[n + 1], da[n + 1]))});
      }
      // H_n(B) → H_n(C): kernel equals the image of H_n(A).
      {
        const SparseMatrix ker = preimage(ring, zb[n], multiply(ring, p_map[n], zb[n]), dc[n + 1]);
        const SparseMatrix im = hconcat(multiply(ring, i_map[n], za[n]), db[n + 1]);
        r.nodes.push_back({"B", n, same_lattice(ring, ker, im)});
      }
      // H_n(C) → H_{n-1}(A): kernel equals the image of H_n(B).
      {
        const SparseMatrix ker = n == 0 ? zc[0] : preimage(ring, zc[n], connecting[n], da[n]);
        const SparseMatrix im = hconcat(multiply(ring, p_map[n], zb[n]), dc[n + 1]);
        r.nodes.push_back({"C", n, same_lattice(ring, ker, im)});
      }
    }
  }

  r.h_sub = complex_homology(a);
  r.h_total = complex_homology(b);
  r.h_quot = complex_homology(c);
  r.h_sub.resize(n_max + 1);
  r.h_total.resize(n_max + 1);
  r.h_quot.resize(n_max + 1);
  r.direct_sum_matches = true;
  for (size_t n = 0; n <= n_max; ++n)
    if (!(direct_sum_invariants(ring, r.h_sub[n], r.h_quot[n]) == r.h_total[n])) r.direct_sum_matches = false;

  r.exact = r.chain_maps && r.short_exact && !r.nodes.empty() &&
            std::all_of(r.nodes.begin(), r.nodes.end(), [](const LesNode& x) { return x.exact; });
  return r;
}

ContinuityReport continuity_verify(const GroupoidPtr& g, const std::vector<std::vector<int64_t>>& chain,
                                   const Ring& ring, size_t n_max, const HomologyOptions& opts) {
  const Filtration f = validate_filtration(g, chain);
  ContinuityReport r;
  std::vector<Subgroupoid> subs;
  std::vector<GModule> trivial;
  for (const auto& level : f.levels) {
    subs.push_back(subgroupoid(g, level));
    trivial.push_back(trivial_module(subs.back().groupoid, ring));
    r.levels.push_back(homology(trivial.back(), n_max, opts));
  }
  const GModule tg = trivial_module(g, ring);
  r.direct = homology(tg, n_max, opts);
  r.terminal = compare_homology(r.levels.back().degrees, r.direct.degrees);

  for (size_t i = 0; i + 1 < subs.size(); ++i) {
    std::vector<ArrowId> inner;
    for (ArrowId a : subs[i].arrow_to_ambient) inner.push_back(subs[i + 1].arrow_from_ambient[static_cast<size_t>(a)]);
    const Subgroupoid step = subgroupoid(subs[i + 1].groupoid, inner);
    const GModule t = trivial_module(step.groupoid, ring);
    r.h0_maps.push_back(induced_h0(step, t, trivial[i + 1]));
  }
  const Matrix terminal_map = induced_h0(subs.back(), trivial.back(), tg);
  r.terminal_iso = is_invertible(ring, terminal_map);

  r.composites_match = true;
  for (size_t i = 0; i < subs.size(); ++i) {
    Matrix acc = Matrix::identity(terminal_map.cols());
    if (i + 1 < subs.size()) {
      acc = r.h0_maps[i];
      for (size_t k = i + 1; k < r.h0_maps.size(); ++k) acc = multiply(ring, r.h0_maps[k], acc);
    }
    const Matrix composite = multiply(ring, terminal_map, acc);
    if (!(composite == induced_h0(subs[i], trivial[i], tg))) r.composites_match = false;
  }
  r.passed = r.terminal.equal && r.composites_match && r.terminal_iso;
  return r;
}

}  // namespace gwb
