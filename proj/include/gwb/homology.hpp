#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwb/bar_complex.hpp"
#include "gwb/smith.hpp"

namespace gwb {

struct HomologyOptions {
  size_t tuple_cap = kDefaultTupleCap;
  bool normalized = true;  // normalized bar complex (same homology, fewer tuples)
  bool parallel = true;
  bool check_square = false;  // verify ∂∂ = 0 before reducing
};

struct HomologyReport {
  std::vector<ModuleInvariants> degrees;  // H_0..H_{n_max}
  std::string ring;
  size_t n_max = 0;
  size_t units = 0;
  size_t arrows = 0;
  std::vector<size_t> module_ranks;  // fiber rank per unit
  std::vector<size_t> chain_ranks;   // rank C_0..C_{n_max+1}
  bool normalized = true;
  std::optional<uint64_t> seed;
};

/// H_n(𝒢, M) for 0 <= n <= n_max. Degree n_max + 1 is built internally.
HomologyReport homology(const GModule& m, size_t n_max, const HomologyOptions& opts = {});

/// Homology of an already-built complex, degrees 0..top-1.
std::vector<ModuleInvariants> complex_homology(const ChainComplex& c);

/// Independent instances; the parallel version distributes modules over threads.
std::vector<HomologyReport> homology_batch(const std::vector<GModule>& modules, size_t n_max,
                                           const HomologyOptions& opts = {});
std::vector<HomologyReport> homology_batch_serial(const std::vector<GModule>& modules, size_t n_max,
                                                  const HomologyOptions& opts = {});

/// True iff every fiber is R and every arrow acts as the identity.
bool is_trivial_module(const GModule& m);

/// Coordinates of H_0 classes for the trivial module: orbit classes in
/// least-unit order. Also confirms that im ∂_1 is the span of the orbit
/// differences e_x − e_y, throwing IncompatibleModules otherwise.
std::vector<size_t> h0_orbit_coordinates(const GModule& m);

/// Induced map H_0(H, M|H) → H_0(G, M) for an inclusion, in orbit bases.
/// Throws IncompatibleModules unless both modules are trivial and agree.
Matrix induced_h0(const Subgroupoid& h, const GModule& m_h, const GModule& m_g);

/// A refinement of unit spaces: unit x of `from` maps to the sum of the
/// units image[x] of `to`.
struct UnitRefinement {
  GroupoidPtr from;
  GroupoidPtr to;
  std::vector<std::vector<UnitId>> image;
};
/// Induced map on H_0 of trivial modules for a refinement; checks that the
/// image of a class does not depend on the chosen unit.
Matrix induced_h0(const UnitRefinement& r, const GModule& m_from, const GModule& m_to);

}  // namespace gwb
