#pragma once

#include <string>
#include <vector>

#include "gwb/groupoid.hpp"

namespace gwb {

/// A finite group by multiplication table; element 0 is the identity.
struct FiniteGroup {
  std::string name;
  size_t order = 1;
  std::vector<int> table;  // table[a * order + b] = a*b

  int mul(int a, int b) const { return table[static_cast<size_t>(a) * order + static_cast<size_t>(b)]; }
  int inv(int a) const;
};

FiniteGroup cyclic_group(size_t m);
FiniteGroup klein_four_group();
FiniteGroup symmetric_group_3();
/// C1..C6, V4, S3 in that order.
const std::vector<FiniteGroup>& small_group_catalogue();

/// One-unit groupoid whose arrows are the group elements (ids = elements).
GroupoidPtr group_groupoid(const FiniteGroup& h);
/// Pair groupoid on k units; arrow x*k + y is (x, y) with range x, source y.
GroupoidPtr pair_groupoid(size_t k);
/// Transitive groupoid pair(k) x H; arrow ((x*k + y) * |H| + h).
GroupoidPtr transitive_groupoid(size_t k, const FiniteGroup& h);
/// Action groupoid of H acting on points: action[g][p] is g.p. The arrow
/// g * points + p goes from p to g.p.
GroupoidPtr action_groupoid(const FiniteGroup& h, const std::vector<std::vector<int>>& action);
/// Disjoint union, ids offset in order.
GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts);
/// Same groupoid with unit x renamed unit_perm[x] and arrow a renamed arrow_perm[a].
GroupoidPtr relabel(const FiniteGroupoid& g, const std::vector<UnitId>& unit_perm,
                    const std::vector<ArrowId>& arrow_perm);

}  // namespace gwb
