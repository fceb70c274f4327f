#include "gwb/smith.hpp"

#include <sstream>

#include "gwb/errors.hpp"

namespace gwb {

namespace {

// Row/column operations on D and the tracked transform.
struct SmithWork {
  const Ring& ring;
  Matrix D, U, V;
  bool track;

  // row_dst -= q * row_src  (restricted to columns >= from for D)
  void row_axpy(size_t dst, size_t src, const Rational& q, size_t from) {
    for (size_t c = from; c < D.cols(); ++c) {
      if (D(src, c).is_zero()) continue;
      D(dst, c) = ring.sub(D(dst, c), ring.mul(q, D(src, c)));
    }
    if (!track) return;
    for (size_t c = 0; c < U.cols(); ++c) {
      if (U(src, c).is_zero()) continue;
      U(dst, c) = ring.sub(U(dst, c), ring.mul(q, U(src, c)));
    }
  }

  void col_axpy(size_t dst, size_t src, const Rational& q, size_t from) {
    for (size_t r = from; r < D.rows(); ++r) {
      if (D(r, src).is_zero()) continue;
      D(r, dst) = ring.sub(D(r, dst), ring.mul(q, D(r, src)));
    }
    if (!track) return;
    for (size_t r = 0; r < V.rows(); ++r) {
      if (V(r, src).is_zero()) continue;
      V(r, dst) = ring.sub(V(r, dst), ring.mul(q, V(r, src)));
    }
  }

  void swap_rows(size_t a, size_t b) {
    D.swap_rows(a, b);
    if (track) U.swap_rows(a, b);
  }

  void swap_cols(size_t a, size_t b) {
    D.swap_cols(a, b);
    if (track) V.swap_cols(a, b);
  }

  void scale_row(size_t r, const Rational& u, size_t from) {
    for (size_t c = from; c < D.cols(); ++c) D(r, c) = ring.mul(u, D(r, c));
    if (!track) return;
    for (size_t c = 0; c < U.cols(); ++c) U(r, c) = ring.mul(u, U(r, c));
  }
};

bool find_smallest_pivot(const Ring& ring, const Matrix& d, size_t t, size_t& pr, size_t& pc) {
  bool found = false;
  Integer best;
  for (size_t r = t; r < d.rows(); ++r) {
    for (size_t c = t; c < d.cols(); ++c) {
      if (d(r, c).is_zero()) continue;
      Integer n = ring.norm(d(r, c));
      if (!found || n < best) {
        found = true;
        best = n;
        pr = r;
        pc = c;
        if (best.is_one()) return true;
      }
    }
  }
  return found;
}

// q with a - q*b of least norm; over Z the remainder is centred.
Rational reduced_quotient(const Ring& ring, const Rational& a, const Rational& b) {
  Rational q, r;
  ring.divmod(a, b, q, r);
  if (ring.kind() == Ring::Kind::Integers && !r.is_zero()) {
    const Integer twice = r.num().abs() * Integer(2);
    if (twice > b.num().abs()) q = ring.add(q, Rational(r.sign() == b.sign() ? 1 : -1));
  }
  return q;
}

Matrix with_rows(const Matrix& m, size_t rows) {
  if (m.cols() == 0 && m.rows() != rows) return Matrix(rows, 0);
  return m;
}

}  // namespace

SmithForm smith_normal_form(const Ring& ring, const Matrix& a, bool with_transforms) {
  const size_t m = a.rows();
  const size_t n = a.cols();
  SmithWork w{ring, a, with_transforms ? Matrix::identity(m) : Matrix(),
              with_transforms ? Matrix::identity(n) : Matrix(), with_transforms};
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < n; ++c) w.D(r, c) = ring.normalize(w.D(r, c));

  size_t t = 0;
  std::vector<Rational> diagonal;
  while (t < m && t < n) {
    size_t pr = 0, pc = 0;
    if (!find_smallest_pivot(ring, w.D, t, pr, pc)) break;
    // Each round moves the smallest entry of the trailing block to (t, t)
    // and reduces row t and column t by it; any nonzero remainder is smaller
    // than the pivot, so the pivot norm strictly decreases between rounds.
    for (;;) {
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);
      bool clear = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (w.D(i, t).is_zero()) continue;
        w.row_axpy(i, t, reduced_quotient(ring, w.D(i, t), w.D(t, t)), t);
        if (!w.D(i, t).is_zero()) clear = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (w.D(t, j).is_zero()) continue;
        w.col_axpy(j, t, reduced_quotient(ring, w.D(t, j), w.D(t, t)), t);
        if (!w.D(t, j).is_zero()) clear = false;
      }
      if (clear) {
        // Enforce the divisibility chain: the pivot must divide the rest.
        size_t bad = m;
        for (size_t i = t + 1; i < m && bad == m; ++i)
          for (size_t j = t + 1; j < n; ++j)
            if (!w.D(i, j).is_zero() && !ring.divides(w.D(t, t), w.D(i, j))) {
              bad = i;
              break;
            }
        if (bad == m) break;
        w.row_axpy(t, bad, Rational(-1), t);
      }
      find_smallest_pivot(ring, w.D, t, pr, pc);
    }

    Rational unit;
    Rational canon = ring.associate(w.D(t, t), &unit);
    if (!(unit == Rational(1))) w.scale_row(t, ring.inverse(unit), t);
    w.D(t, t) = canon;
    diagonal.push_back(canon);
    ++t;
  }

  SmithForm out;
  out.rank = diagonal.size();
  out.diagonal = std::move(diagonal);
  out.D = std::move(w.D);
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  return out;
}

std::string ModuleInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "R^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "R/" << t.to_string();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

ModuleInvariants homology_invariants(const Ring& ring, const Matrix& d_in, const Matrix& d_out) {
  const size_t mid = d_out.cols();
  if (d_in.rows() != mid) {
    throw DimensionMismatch("d_in has " + std::to_string(d_in.rows()) + " rows but d_out has " +
                            std::to_string(mid) + " columns");
  }
  if (d_out.rows() > 0 && d_in.cols() > 0) {
    Matrix prod = multiply(ring, d_out, d_in);
    for (size_t c = 0; c < prod.cols(); ++c) {
      for (size_t r = 0; r < prod.rows(); ++r) {
        if (!prod(r, c).is_zero()) {
          throw NotAComplex("d_out * d_in is nonzero in column " + std::to_string(c));
        }
      }
    }
  }
  SmithForm in = smith_normal_form(ring, d_in, false);
  SmithForm out = smith_normal_form(ring, d_out, false);
  ModuleInvariants inv;
  inv.free_rank = mid - out.rank - in.rank;
  for (const auto& d : in.diagonal)
    if (!ring.is_unit(d)) inv.torsion.push_back(d);
  return inv;
}

ModuleInvariants localize_invariants(const ModuleInvariants& inv, int64_t n) {
  Ring local = Ring::localized(n);
  ModuleInvariants out;
  out.free_rank = inv.free_rank;
  for (const auto& t : inv.torsion) {
    Integer stripped = local.strip_inverted(t.num());
    if (!stripped.is_one()) out.torsion.emplace_back(stripped);
  }
  return out;
}

LatticeSolver::LatticeSolver(const Ring& ring, const Matrix& generators)
    : ring_(ring), generators_(generators), snf_(smith_normal_form(ring, generators, true)) {}

std::optional<Vector> LatticeSolver::solve(const Vector& v) const {
  if (v.size() != generators_.rows()) throw DimensionMismatch("vector length differs from lattice rows");
  Vector w = multiply(ring_, snf_.U, v);
  Vector y(generators_.cols());
  for (size_t i = 0; i < w.size(); ++i) {
    if (i < snf_.rank) {
      if (!ring_.divides(snf_.diagonal[i], w[i])) return std::nullopt;
      y[i] = ring_.exact_quotient(w[i], snf_.diagonal[i]);
    } else if (!w[i].is_zero()) {
      return std::nullopt;
    }
  }
  return multiply(ring_, snf_.V, y);
}

MembershipResult membership(const Ring& ring, const Matrix& lattice, const Vector& v) {
  LatticeSolver solver(ring, lattice);
  auto x = solver.solve(v);
  if (!x) return {false, {}};
  return {true, std::move(*x)};
}

Matrix kernel_basis(const Ring& ring, const Matrix& a) {
  SmithForm snf = smith_normal_form(ring, a, true);
  std::vector<size_t> cols;
  for (size_t c = snf.rank; c < a.cols(); ++c) cols.push_back(c);
  return snf.V.select_columns(cols);
}

Matrix image_basis(const Ring& ring, const Matrix& a) {
  SmithForm snf = smith_normal_form(ring, a, true);
  Matrix av = multiply(ring, a, snf.V);
  std::vector<size_t> cols;
  for (size_t c = 0; c < snf.rank; ++c) cols.push_back(c);
  return av.select_columns(cols);
}

bool same_lattice(const Ring& ring, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) return false;
  LatticeSolver sa(ring, a), sb(ring, b);
  for (size_t c = 0; c < a.cols(); ++c)
    if (!sb.contains(a.column(c))) return false;
  for (size_t c = 0; c < b.cols(); ++c)
    if (!sa.contains(b.column(c))) return false;
  return true;
}

ModuleInvariants subquotient_invariants(const Ring& ring, const Matrix& basis_k, const Matrix& gens_l) {
  const size_t k = basis_k.cols();
  Matrix coords(k, gens_l.cols());
  if (k > 0 && gens_l.cols() > 0) {
    LatticeSolver solver(ring, basis_k);
    for (size_t c = 0; c < gens_l.cols(); ++c) {
      auto x = solver.solve(gens_l.column(c));
      if (!x) throw DimensionMismatch("subquotient: generator " + std::to_string(c) + " is outside K");
      coords.set_column(c, *x);
    }
  } else if (k == 0) {
    for (size_t c = 0; c < gens_l.cols(); ++c)
      for (size_t r = 0; r < gens_l.rows(); ++r)
        if (!gens_l(r, c).is_zero()) throw DimensionMismatch("subquotient: K is zero but L is not");
  }
  SmithForm snf = smith_normal_form(ring, coords, false);
  ModuleInvariants inv;
  inv.free_rank = k - snf.rank;
  for (const auto& d : snf.diagonal)
    if (!ring.is_unit(d)) inv.torsion.push_back(d);
  return inv;
}

ModuleInvariants presented_homology(const Ring& ring, size_t mid_rank, const Matrix& d_in,
                                    const Matrix& d_out, const Matrix& rel_mid,
                                    const Matrix& rel_out) {
  const Matrix din = with_rows(d_in, mid_rank);
  const Matrix rmid = with_rows(rel_mid, mid_rank);
  const size_t out_rows = d_out.rows();
  const Matrix rout = with_rows(rel_out, out_rows);
  if (din.rows() != mid_rank || rmid.rows() != mid_rank || d_out.cols() != mid_rank) {
    throw DimensionMismatch("presented_homology: inconsistent shapes");
  }

  // Cycles modulo relations: x with d_out x in im rel_out.
  Matrix cycles;
  if (out_rows == 0) {
    cycles = Matrix::identity(mid_rank);
  } else {
    Matrix neg_rel(out_rows, rout.cols());
    for (size_t r = 0; r < out_rows; ++r)
      for (size_t c = 0; c < rout.cols(); ++c) neg_rel(r, c) = ring.neg(rout(r, c));
    Matrix ker = kernel_basis(ring, Matrix::hconcat(d_out, neg_rel));
    Matrix proj(mid_rank, ker.cols());
    for (size_t r = 0; r < mid_rank; ++r)
      for (size_t c = 0; c < ker.cols(); ++c) proj(r, c) = ker(r, c);
    cycles = image_basis(ring, proj);
  }
  Matrix boundaries = Matrix::hconcat(din, rmid);
  return subquotient_invariants(ring, cycles, boundaries);
}

}  // namespace gwb
