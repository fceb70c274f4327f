#pragma once

#include <optional>
#include <vector>

#include "gwb/gmodule.hpp"
#include "gwb/groupoid.hpp"
#include "gwb/matrix.hpp"

namespace gwb {

/// Basis of C_n: one block of fiber coordinates per tuple, the block of
/// (g_1, ..., g_n) being M_{s(g_n)} (for n = 0 the block of unit x is M_x).
struct DegreeBasis {
  TupleSpace tuples;
  std::vector<size_t> offset;  // offset[i] = first coordinate of tuple i; offset.back() = rank
  size_t rank() const { return offset.back(); }
  UnitId block_unit(const FiniteGroupoid& g, size_t i) const;
};

/// The bar complex tensored with a module.
struct ChainComplex {
  Ring ring = Ring::integers();
  bool normalized = false;
  std::vector<DegreeBasis> bases;         // degrees 0..top
  std::vector<SparseMatrix> boundaries;   // boundaries[n] = ∂_n : C_n → C_{n-1}; boundaries[0] is 0 x rank C_0
  std::vector<SparseMatrix> relations;    // relations[n]: generators of the relation submodule of C_n

  size_t top() const { return bases.size() - 1; }
  size_t rank(size_t n) const { return bases[n].rank(); }
};

struct BarOptions {
  size_t tuple_cap = kDefaultTupleCap;
  bool normalized = false;  // drop tuples containing unit arrows
  bool parallel = true;
};

/// C_0..C_{n_max} with ∂(g_1..g_n; m) = (g_2..g_n; m)
///   + Σ_{i=1}^{n-1} (-1)^i (.., g_i∘g_{i+1}, ..; m) + (-1)^n (g_1..g_{n-1}; g_n·m).
ChainComplex bar_complex(const GModule& m, size_t n_max, const BarOptions& opts = {});

/// First column with ∂_n ∂_{n+1} != 0 as (n, column), or nullopt.
std::optional<std::pair<size_t, size_t>> first_nonzero_square(const ChainComplex& c);

}  // namespace gwb
