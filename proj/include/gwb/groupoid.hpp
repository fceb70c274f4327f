#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gwb {

using ArrowId = int32_t;
using UnitId = int32_t;

inline constexpr ArrowId kNoArrow = -1;
inline constexpr size_t kDefaultTupleCap = 10'000'000;

/// Raw groupoid description as read from a file, before validation.
struct GroupoidSpec {
  struct Arrow {
    int64_t id = 0;
    int64_t src = 0;
    int64_t rng = 0;
  };
  std::vector<std::string> units;
  std::vector<Arrow> arrows;
  std::vector<std::array<int64_t, 3>> compose;  // (g, h, g∘h)
  std::vector<std::array<int64_t, 2>> inverse;  // (g, g⁻¹)
  std::vector<std::array<int64_t, 2>> unit_arrows;  // (x, id)
};

/// A validated finite groupoid with an explicit composition table.
///
/// compose(g, h) is g∘h (apply h first) and is defined iff source(g) = range(h).
/// Instances are immutable; share them through GroupoidPtr.
class FiniteGroupoid {
 public:
  size_t num_units() const { return unit_names_.size(); }
  size_t num_arrows() const { return src_.size(); }
  const std::vector<std::string>& unit_names() const { return unit_names_; }

  UnitId source(ArrowId g) const { return src_[static_cast<size_t>(g)]; }
  UnitId range(ArrowId g) const { return rng_[static_cast<size_t>(g)]; }
  ArrowId inverse(ArrowId g) const { return inv_[static_cast<size_t>(g)]; }
  ArrowId unit_arrow(UnitId x) const { return unit_arrow_[static_cast<size_t>(x)]; }
  bool is_unit_arrow(ArrowId g) const { return unit_arrow(source(g)) == g; }

  /// g∘h, or kNoArrow when source(g) != range(h).
  ArrowId compose(ArrowId g, ArrowId h) const {
    if (src_[static_cast<size_t>(g)] != rng_[static_cast<size_t>(h)]) return kNoArrow;
    return table_[offset_[static_cast<size_t>(g)] + pos_in_range_[static_cast<size_t>(h)]];
  }

  /// Arrows with the given source (resp. range), ascending.
  const std::vector<ArrowId>& with_source(UnitId x) const { return by_source_[static_cast<size_t>(x)]; }
  const std::vector<ArrowId>& with_range(UnitId x) const { return by_range_[static_cast<size_t>(x)]; }

  bool has_unit(int64_t x) const { return x >= 0 && static_cast<size_t>(x) < num_units(); }
  bool has_arrow(int64_t g) const { return g >= 0 && static_cast<size_t>(g) < num_arrows(); }

  /// Round-trips to the file representation.
  GroupoidSpec to_spec() const;

 private:
  friend std::shared_ptr<const FiniteGroupoid> validate_groupoid(const GroupoidSpec&, size_t);

  std::vector<std::string> unit_names_;
  std::vector<UnitId> src_, rng_;
  std::vector<ArrowId> inv_, unit_arrow_;
  std::vector<std::vector<ArrowId>> by_source_, by_range_;
  std::vector<size_t> offset_;
  std::vector<size_t> pos_in_range_;
  std::vector<ArrowId> table_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// Checks every groupoid axiom exhaustively. Associativity runs over all
/// composable triples and throws ResourceLimit above `triple_cap`.
GroupoidPtr validate_groupoid(const GroupoidSpec& spec, size_t triple_cap = kDefaultTupleCap);

struct OrbitPartition {
  std::vector<std::vector<UnitId>> classes;  // ordered by least unit
  std::vector<size_t> class_of;
};
OrbitPartition orbits(const FiniteGroupoid& g);

struct IsotropyGroup {
  UnitId unit = 0;
  std::vector<ArrowId> elements;  // ascending; elements[0] is the unit arrow
  size_t order() const { return elements.size(); }
};
IsotropyGroup isotropy_group(const FiniteGroupoid& g, int64_t x);

bool is_principal(const FiniteGroupoid& g);
bool is_group_bundle(const FiniteGroupoid& g);

/// A subgroupoid re-indexed densely, with maps back to the ambient ids.
/// Sub-ids preserve the ambient order of arrows and units.
struct Subgroupoid {
  GroupoidPtr ambient;
  GroupoidPtr groupoid;
  std::vector<ArrowId> arrow_to_ambient;
  std::vector<UnitId> unit_to_ambient;
  std::vector<ArrowId> arrow_from_ambient;  // kNoArrow if absent
  std::vector<UnitId> unit_from_ambient;    // -1 if absent
};

/// The subgroupoid on an arrow set closed under composition and inverse.
/// Its units are the sources of its arrows. Throws NotSubgroupoid.
Subgroupoid subgroupoid(const GroupoidPtr& g, const std::vector<ArrowId>& arrows);

struct Restriction {
  Subgroupoid sub;
  bool full = false;  // every unit is the range of an arrow starting in Y
};
/// Arrows with source and range in Y. Throws UnknownUnit.
Restriction restrict(const GroupoidPtr& g, const std::vector<int64_t>& y);

/// Least unit of every orbit.
std::vector<UnitId> transversal(const FiniteGroupoid& g);

/// Units whose orbit has at least k elements.
std::vector<UnitId> orbit_stratum(const FiniteGroupoid& g, size_t k);

/// All composable n-tuples (g_0, ..., g_{n-1}), source(g_i) = range(g_{i+1}),
/// in lexicographic order. For n = 0 the space is the unit set.
class TupleSpace {
 public:
  size_t arity() const { return n_; }
  size_t size() const { return count_; }
  bool normalized() const { return normalized_; }

  /// Pointer to the n arrows of tuple i (unused for n = 0).
  const ArrowId* tuple(size_t i) const { return data_.data() + i * n_; }
  std::vector<ArrowId> tuple_vector(size_t i) const { return {tuple(i), tuple(i) + n_}; }
  /// Index of a tuple, or nullopt. For n = 0 pass the unit id as a 1-element span.
  std::optional<size_t> find(const ArrowId* t) const;
  std::optional<size_t> find(const std::vector<ArrowId>& t) const { return find(t.data()); }

 private:
  friend TupleSpace composable_tuples(const FiniteGroupoid&, size_t, size_t);
  friend TupleSpace nondegenerate_tuples(const FiniteGroupoid&, size_t, size_t);

  size_t n_ = 0;
  size_t count_ = 0;
  bool normalized_ = false;
  std::vector<ArrowId> data_;
};

/// Number of composable n-tuples, saturating at SIZE_MAX.
size_t count_composable(const FiniteGroupoid& g, size_t n, bool skip_units = false);

/// Throws ResourceLimit when the count exceeds `cap`.
TupleSpace composable_tuples(const FiniteGroupoid& g, size_t n, size_t cap = kDefaultTupleCap);
/// Composable tuples with no unit arrow (the normalized bar complex basis).
TupleSpace nondegenerate_tuples(const FiniteGroupoid& g, size_t n, size_t cap = kDefaultTupleCap);

/// d_i on a composable (n+1)-tuple: i = 0 drops g_0, otherwise composes
/// g_{i-1}∘g_i. Requires n >= 1 and 0 <= i <= n; throws IndexOutOfRange.
std::vector<ArrowId> face_map(const FiniteGroupoid& g, size_t n, size_t i, const std::vector<ArrowId>& t);

/// The degree-zero face d_0 = s_*, sending an arrow to its source.
inline UnitId augmentation(const FiniteGroupoid& g, ArrowId a) { return g.source(a); }

bool is_composable(const FiniteGroupoid& g, const std::vector<ArrowId>& t);

}  // namespace gwb
