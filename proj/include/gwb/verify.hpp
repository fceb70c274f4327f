#pragma once

#include <string>
#include <vector>

#include "gwb/bisection.hpp"
#include "gwb/homology.hpp"
#include "gwb/steinberg.hpp"

namespace gwb {

struct DegreeComparison {
  size_t n = 0;
  ModuleInvariants lhs;
  ModuleInvariants rhs;
  bool equal = false;
};

struct ComparisonReport {
  std::vector<DegreeComparison> degrees;
  bool equal = false;
};

ComparisonReport compare_homology(const std::vector<ModuleInvariants>& lhs, const std::vector<ModuleInvariants>& rhs);

/// lhs = H_n(G, Ind_H^G M), rhs = H_n(H, M).
ComparisonReport shapiro_verify(const Subgroupoid& h, const GModule& m, size_t n_max,
                                const HomologyOptions& opts = {});

struct MoritaReport {
  std::vector<UnitId> y;           // the transversal
  ComparisonReport comparison;     // lhs = H_n(G, M), rhs = H_n(G^Y_Y, 1_Y M)
  FullnessDecomposition witness;   // 1_Y is full
};
MoritaReport morita_reduce(const GModule& m, size_t n_max, const HomologyOptions& opts = {});

struct LesNode {
  std::string name;  // "A", "B" or "C" for H_n(sub), H_n(total), H_n(quot)
  size_t n = 0;
  bool exact = false;
};
struct LesReport {
  std::vector<UnitId> u;
  std::vector<UnitId> complement;
  bool chain_maps = false;   // i and p commute with the boundaries
  bool short_exact = false;  // 0 → A_n → B_n → C_n → 0 in every degree
  std::vector<LesNode> nodes;
  std::vector<ModuleInvariants> h_sub, h_total, h_quot;
  std::vector<Matrix> connecting;  // connecting[n]: Z_n(C) basis → A_{n-1}; empty for n = 0
  bool direct_sum_matches = false;  // H_n(B) ≅ H_n(A) ⊕ H_n(C) as invariants
  bool exact = false;
};
/// Long exact sequence for the invariant unit set U. Requires free fibers.
/// Throws NotInvariant, UnknownUnit or IncompatibleModules.
LesReport les_verify(const GModule& m, const std::vector<int64_t>& u, size_t n_max);

struct ContinuityReport {
  std::vector<HomologyReport> levels;   // trivial coefficients on every level
  HomologyReport direct;                // H_n(G) computed directly
  ComparisonReport terminal;            // last level against the direct answer
  std::vector<Matrix> h0_maps;          // H_0(level i) → H_0(level i+1)
  bool composites_match = false;        // Π maps == direct H_0(level i) → H_0(G)
  bool terminal_iso = false;            // H_0(last level) → H_0(G) invertible
  bool passed = false;
};
/// Throws whatever validate_filtration throws.
ContinuityReport continuity_verify(const GroupoidPtr& g, const std::vector<std::vector<int64_t>>& chain,
                                   const Ring& ring, size_t n_max, const HomologyOptions& opts = {});

}  // namespace gwb
