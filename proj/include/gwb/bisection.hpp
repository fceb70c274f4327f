#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwb/groupoid.hpp"

namespace gwb {

/// Arrow set on which source and range are injective; kept sorted.
using Bisection = std::vector<ArrowId>;

bool is_bisection(const FiniteGroupoid& g, const std::vector<ArrowId>& arrows);
/// Sorts and deduplicates; throws NotABisection naming two clashing arrows.
Bisection make_bisection(const FiniteGroupoid& g, std::vector<ArrowId> arrows);

/// UV = {u∘v : source(u) = range(v)}.
Bisection bisection_product(const FiniteGroupoid& g, const Bisection& u, const Bisection& v);
Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& u);
/// Units of an idempotent bisection as unit ids, or the source set V⁻¹V.
std::vector<UnitId> bisection_sources(const FiniteGroupoid& g, const Bisection& v);

struct BisectionSemigroup {
  std::vector<Bisection> generators;
  std::vector<Bisection> elements;  // lexicographically sorted
  bool cover = false;               // union of elements is every arrow
};

inline constexpr size_t kDefaultSemigroupCap = 1u << 20;

/// Closure under product and inverse. The empty bisection is kept only
/// when it is one of the generators. Throws ResourceLimit above `cap`.
BisectionSemigroup generate_semigroup(const FiniteGroupoid& g, const std::vector<std::vector<ArrowId>>& x,
                                      size_t cap = kDefaultSemigroupCap);

/// The subgroupoid formed by the union of all elements.
Subgroupoid union_subgroupoid(const GroupoidPtr& g, const BisectionSemigroup& s);

/// First failing inverse-semigroup law (V V⁻¹ V = V, commuting idempotents,
/// closure), or nullopt.
std::optional<std::string> check_inverse_semigroup_laws(const FiniteGroupoid& g, const BisectionSemigroup& s);

struct Filtration {
  GroupoidPtr ambient;
  std::vector<std::vector<ArrowId>> levels;  // each sorted
};

/// Throws NotSubgroupoid, NotIncreasing or UnionIncomplete.
Filtration validate_filtration(const GroupoidPtr& g, const std::vector<std::vector<int64_t>>& chain);

struct AfLevelReport {
  size_t level = 0;
  bool principal = true;
  std::vector<ArrowId> isotropy_witnesses;  // nontrivial isotropy arrows
};
struct AfReport {
  bool af = true;
  std::vector<AfLevelReport> levels;
};
AfReport is_af_filtration(const Filtration& f);

}  // namespace gwb
