#pragma once

#include <optional>
#include <vector>

#include "gwb/matrix.hpp"

namespace gwb {

/// Echelon form (distinct lowest rows) of a growing set of sparse generators.
///
/// Only unimodular column operations are applied, so the reduced columns are
/// a basis of the generated lattice. Each reduced column remembers its
/// coefficients on the generators, and generators that reduce to zero yield
/// a basis of the relation module (the kernel of the generator matrix).
class EchelonLattice {
 public:
  EchelonLattice(const Ring& ring, size_t dim);
  EchelonLattice(const Ring& ring, const SparseMatrix& generators);

  /// Appends a generator. Returns its relation vector when it is dependent.
  std::optional<SparseColumn> add(const SparseColumn& v);

  /// Coefficients x on the generators with Σ x_j gen_j = v, or nullopt.
  std::optional<SparseColumn> solve(const SparseColumn& v) const;
  bool contains(const SparseColumn& v) const { return solve(v).has_value(); }

  size_t dim() const { return dim_; }
  size_t rank() const { return pivots_.size(); }
  size_t generators() const { return generators_; }
  SparseMatrix basis() const;                      // dim x rank
  SparseMatrix relations() const;                  // generators x (generators - rank)

 private:
  struct Pivot {
    SparseColumn col;
    SparseColumn coeffs;
  };
  void make_canonical(SparseColumn& col, SparseColumn& coeffs) const;

  Ring ring_;
  size_t dim_;
  size_t generators_ = 0;
  std::vector<Pivot> pivots_;
  std::vector<int64_t> pivot_of_row_;
  std::vector<SparseColumn> relations_;
};

/// Basis (as columns) of {x : A x = 0}.
SparseMatrix sparse_kernel(const Ring& ring, const SparseMatrix& a);
/// True iff the column lattices of A and B coincide.
bool same_lattice(const Ring& ring, const SparseMatrix& a, const SparseMatrix& b);

SparseMatrix sparse_identity(size_t n);
SparseMatrix hconcat(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix negated(const Ring& ring, const SparseMatrix& a);
SparseMatrix transpose(const SparseMatrix& a);
/// The first `rows` rows of A.
SparseMatrix top_rows(const SparseMatrix& a, size_t rows);

}  // namespace gwb
