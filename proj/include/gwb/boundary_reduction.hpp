#pragma once

#include <vector>

#include "gwb/matrix.hpp"

namespace gwb {

/// Rank and nonunit invariant factors of a sparse matrix.
struct BoundaryRank {
  size_t rank = 0;
  std::vector<Rational> torsion;  // canonical associates, d_1 | d_2 | ...
};

/// Sparse column reduction (lowest-row pivots) specialised to the four
/// rings. Columns are scaled to integer vectors first; pivots that are not
/// units are merged with a unimodular 2x2 Bezout step, and only the columns
/// carrying such pivots reach the dense Smith form at the end.
BoundaryRank reduce_boundary(const Ring& ring, const SparseMatrix& d);

}  // namespace gwb
