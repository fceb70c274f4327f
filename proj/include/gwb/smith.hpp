#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwb/matrix.hpp"

namespace gwb {

/// D = U * A * V with U, V invertible over the ring and D diagonal,
/// d_1 | d_2 | ... | d_rank, each d_i a canonical associate.
struct SmithForm {
  Matrix U;
  Matrix D;
  Matrix V;
  size_t rank = 0;
  std::vector<Rational> diagonal;  // the first `rank` diagonal entries
};

/// Smith normal form over any supported ring. Pivots are chosen with the
/// smallest Euclidean norm to limit coefficient growth.
SmithForm smith_normal_form(const Ring& ring, const Matrix& a, bool with_transforms = true);

/// Canonical form of a finitely generated module over a PID.
struct ModuleInvariants {
  size_t free_rank = 0;
  std::vector<Rational> torsion;  // nonunit, nonzero, d_1 | d_2 | ...

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const ModuleInvariants&, const ModuleInvariants&) = default;
};

/// Invariants of ker(d_out) / im(d_in). Throws NotAComplex when
/// d_out * d_in != 0, naming the first offending column of d_in.
ModuleInvariants homology_invariants(const Ring& ring, const Matrix& d_in, const Matrix& d_out);

/// Base change of integer invariants to Z[1/n]: torsion factors lose every
/// prime dividing n and factors that become units are dropped.
ModuleInvariants localize_invariants(const ModuleInvariants& inv, int64_t n);

/// Solver for x with L x = v where the columns of L generate a lattice.
/// The Smith form of L is computed once and reused for every query.
class LatticeSolver {
 public:
  LatticeSolver(const Ring& ring, const Matrix& generators);

  /// A certificate x with L x = v, or nullopt if v is not in the lattice.
  std::optional<Vector> solve(const Vector& v) const;
  bool contains(const Vector& v) const { return solve(v).has_value(); }

  const Matrix& generators() const { return generators_; }
  size_t rank() const { return snf_.rank; }

 private:
  Ring ring_;
  Matrix generators_;
  SmithForm snf_;
};

/// Membership of v in the column lattice of L, with certificate.
struct MembershipResult {
  bool member = false;
  Vector certificate;  // L * certificate == v when member
};
MembershipResult membership(const Ring& ring, const Matrix& lattice, const Vector& v);

/// Basis (as columns) of {x : A x = 0}.
Matrix kernel_basis(const Ring& ring, const Matrix& a);
/// Basis (as columns) of the column lattice of A.
Matrix image_basis(const Ring& ring, const Matrix& a);

/// True iff the column lattices of A and B coincide (membership both ways).
bool same_lattice(const Ring& ring, const Matrix& a, const Matrix& b);

/// Invariants of K / L where `basis_k` has independent columns and every
/// column of `gens_l` lies in their span.
ModuleInvariants subquotient_invariants(const Ring& ring, const Matrix& basis_k, const Matrix& gens_l);

/// Homology of a complex of finitely presented modules at one degree:
/// { x : d_out x in rel_out } / (im d_in + rel_mid). Relations are given as
/// generator columns; an empty matrix means a free module.
ModuleInvariants presented_homology(const Ring& ring, size_t mid_rank, const Matrix& d_in,
                                    const Matrix& d_out, const Matrix& rel_mid,
                                    const Matrix& rel_out);

}  // namespace gwb
