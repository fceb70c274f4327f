#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gwb/gmodule.hpp"
#include "gwb/groupoid.hpp"

namespace gwb {

using Rng = std::mt19937_64;

/// SplitMix64 mix of (seed, stream); independent sub-seeds for batches.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

struct RandomGroupoidOptions {
  size_t max_arrows = 12;
  size_t min_components = 1;
  size_t max_components = 3;
};
/// Disjoint union of transitive groupoids pair(k) × H, H from the small group
/// catalogue, with shuffled unit and arrow ids.
GroupoidPtr random_groupoid(Rng& rng, const RandomGroupoidOptions& opts = {});

/// Unimodular integer matrix with entries in [-2, 2].
Matrix random_unimodular(Rng& rng, size_t n);

/// Module with free fibers of rank 1..max_rank (constant on orbits). The
/// isotropy group at each orbit root acts by a conjugated sum of coset
/// permutation and sign representations; other arrows are transported along
/// a spanning tree of the orbit, so functoriality holds by construction.
GModule random_module(const GroupoidPtr& g, const Ring& ring, Rng& rng, size_t max_rank = 3);

/// Smallest arrow set containing `arrows` that is closed under composition,
/// inverses and units.
std::vector<ArrowId> subgroupoid_closure(const FiniteGroupoid& g, std::vector<ArrowId> arrows);

/// Closure of a random arrow subset.
Subgroupoid random_subgroupoid(const GroupoidPtr& g, Rng& rng);

/// A random family of bisections whose union is every arrow.
std::vector<std::vector<ArrowId>> random_bisection_cover(const FiniteGroupoid& g, Rng& rng);

/// Union of a random nonempty set of orbits, proper whenever there are two
/// or more orbits.
std::vector<int64_t> random_invariant_set(const FiniteGroupoid& g, Rng& rng);

/// Strictly increasing chain of subgroupoids ending at the whole groupoid.
std::vector<std::vector<int64_t>> random_filtration(const FiniteGroupoid& g, Rng& rng, size_t max_levels = 4);

}  // namespace gwb
