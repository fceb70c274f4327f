#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwb/certify.hpp"
#include "gwb/homology.hpp"

namespace gwb {

/// Level 0 is the root. edges[k] is a vertices[k] x vertices[k+1]
/// multiplicity matrix, row = source vertex.
struct BratteliDiagram {
  std::vector<size_t> vertices;
  std::vector<std::vector<std::vector<int64_t>>> edges;
  size_t depth() const { return edges.size(); }
};

/// Checks shapes, nonnegativity, a single root and that every vertex past
/// the root receives an edge. Throws Malformed or SourceVertex.
BratteliDiagram make_bratteli(std::vector<size_t> vertices, std::vector<std::vector<std::vector<int64_t>>> edges);
BratteliDiagram parse_bratteli(const std::string& text);

BratteliDiagram car_diagram(size_t depth);
BratteliDiagram fibonacci_diagram(size_t depth);

/// One step of a root path: the target vertex and which parallel edge.
struct PathStep {
  size_t vertex = 0;
  size_t edge = 0;
};

struct LevelGroupoid {
  size_t level = 0;
  GroupoidPtr groupoid;
  std::vector<std::vector<PathStep>> paths;  // unit x is paths[x], grouped by terminal vertex
  std::vector<size_t> terminal;              // terminal vertex per unit
};
/// Pair groupoid on the root paths ending at each vertex of level n.
/// Throws DepthExceeded or ResourceLimit above `path_cap` paths.
LevelGroupoid level_groupoid(const BratteliDiagram& b, size_t n, size_t path_cap = 10000);

/// Level n → level n+1: a path maps to all its one-edge extensions.
UnitRefinement level_refinement(const BratteliDiagram& b, const LevelGroupoid& from, const LevelGroupoid& to);

/// Path counts per vertex at each level via the multiplicity recursion.
std::vector<std::vector<size_t>> path_counts(const BratteliDiagram& b, size_t n);

struct InductiveSystem {
  std::vector<size_t> groups;  // free ranks k_0..k_N
  std::vector<Matrix> maps;    // maps[n]: Z^{k_n} → Z^{k_{n+1}}
};
/// A_n = transpose of edges[n], for n < N. Throws DepthExceeded.
InductiveSystem h0_system(const BratteliDiagram& b, size_t n);

struct ColimitReport {
  InductiveSystem system;
  size_t eventual_rank = 0;  // rank over Q of A_{N-1}⋯A_1 (k_N when there is no such map)
  bool stationary = false;   // A_1 = A_2 = ⋯ (A_0 alone when it is the only map)
  std::optional<std::string> label;
};
ColimitReport colimit_report(const InductiveSystem& s);

struct AfLevel {
  size_t level = 0;
  HomologyReport homology;  // trivial Z coefficients
  bool principal = false;
  bool certified = false;
  bool positive_vanish = false;
  std::optional<Matrix> oracle_map;  // induced_h0 from this level to the next
  bool map_matches = true;
};
struct AfHomologyReport {
  std::vector<AfLevel> levels;
  ColimitReport colimit;
  bool verdict = false;  // every level principal, certified and acyclic in positive degrees, maps match
};
AfHomologyReport af_homology_report(const BratteliDiagram& b, size_t n, size_t n_max,
                                    const HomologyOptions& opts = {});

}  // namespace gwb
