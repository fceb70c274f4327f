#include "gwb/groupoid_builders.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "gwb/errors.hpp"

namespace gwb {

namespace {

// Assembles a spec from endpoint arrays and a composition rule, then validates.
GroupoidPtr assemble(size_t units, const std::vector<std::pair<UnitId, UnitId>>& ends,
                     const std::function<ArrowId(ArrowId, ArrowId)>& compose,
                     const std::function<ArrowId(ArrowId)>& inverse,
                     const std::function<ArrowId(UnitId)>& unit_arrow) {
  GroupoidSpec spec;
  for (size_t x = 0; x < units; ++x) spec.units.push_back(std::to_string(x));
  std::vector<std::vector<ArrowId>> by_range(units);
  for (size_t a = 0; a < ends.size(); ++a) {
    spec.arrows.push_back({static_cast<int64_t>(a), ends[a].first, ends[a].second});
    by_range[static_cast<size_t>(ends[a].second)].push_back(static_cast<ArrowId>(a));
  }
  for (size_t a = 0; a < ends.size(); ++a) {
    for (ArrowId b : by_range[static_cast<size_t>(ends[a].first)])
      spec.compose.push_back({static_cast<int64_t>(a), b, compose(static_cast<ArrowId>(a), b)});
    spec.inverse.push_back({static_cast<int64_t>(a), inverse(static_cast<ArrowId>(a))});
  }
  for (size_t x = 0; x < units; ++x) spec.unit_arrows.push_back({static_cast<int64_t>(x), unit_arrow(static_cast<UnitId>(x))});
  return validate_groupoid(spec);
}

FiniteGroup from_rule(std::string name, size_t order, const std::function<int(int, int)>& mul) {
  FiniteGroup g;
  g.name = std::move(name);
  g.order = order;
  g.table.resize(order * order);
  for (size_t a = 0; a < order; ++a)
    for (size_t b = 0; b < order; ++b) g.table[a * order + b] = mul(static_cast<int>(a), static_cast<int>(b));
  return g;
}

}  // namespace

int FiniteGroup::inv(int a) const {
  for (size_t b = 0; b < order; ++b)
    if (mul(a, static_cast<int>(b)) == 0) return static_cast<int>(b);
  throw AxiomViolation("group element " + std::to_string(a) + " has no inverse");
}

FiniteGroup cyclic_group(size_t m) {
  const int mi = static_cast<int>(m);
  return from_rule("C" + std::to_string(m), m, [mi](int a, int b) { return (a + b) % mi; });
}

FiniteGroup klein_four_group() {
  return from_rule("V4", 4, [](int a, int b) { return a ^ b; });
}

FiniteGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  return from_rule("S3", 6, [&](int a, int b) {
    std::array<int, 3> c{};
    for (size_t i = 0; i < 3; ++i)
      c[i] = perms[static_cast<size_t>(a)][static_cast<size_t>(perms[static_cast<size_t>(b)][i])];
    return index(c);
  });
}

const std::vector<FiniteGroup>& small_group_catalogue() {
  static const std::vector<FiniteGroup> catalogue = [] {
    std::vector<FiniteGroup> c;
    for (size_t m = 1; m <= 6; ++m) c.push_back(cyclic_group(m));
    c.push_back(klein_four_group());
    c.push_back(symmetric_group_3());
    return c;
  }();
  return catalogue;
}

GroupoidPtr group_groupoid(const FiniteGroup& h) { return transitive_groupoid(1, h); }

GroupoidPtr pair_groupoid(size_t k) { return transitive_groupoid(k, cyclic_group(1)); }

GroupoidPtr transitive_groupoid(size_t k, const FiniteGroup& h) {
  const size_t m = h.order;
  std::vector<std::pair<UnitId, UnitId>> ends;
  for (size_t x = 0; x < k; ++x)
    for (size_t y = 0; y < k; ++y)
      for (size_t e = 0; e < m; ++e) ends.emplace_back(static_cast<UnitId>(y), static_cast<UnitId>(x));
  auto decode = [k, m](ArrowId a) {
    size_t v = static_cast<size_t>(a);
    return std::array<size_t, 3>{v / m / k, (v / m) % k, v % m};
  };
  auto encode = [k, m](size_t x, size_t y, size_t e) { return static_cast<ArrowId>((x * k + y) * m + e); };
  return assemble(
      k, ends,
      [&](ArrowId a, ArrowId b) {
        auto [x, y, e] = decode(a);
        auto [y2, z, f] = decode(b);
        (void)y;
        (void)y2;
        return encode(x, z, static_cast<size_t>(h.mul(static_cast<int>(e), static_cast<int>(f))));
      },
      [&](ArrowId a) {
        auto [x, y, e] = decode(a);
        return encode(y, x, static_cast<size_t>(h.inv(static_cast<int>(e))));
      },
      [&](UnitId x) { return encode(static_cast<size_t>(x), static_cast<size_t>(x), 0); });
}

GroupoidPtr action_groupoid(const FiniteGroup& h, const std::vector<std::vector<int>>& action) {
  if (action.size() != h.order) throw Malformed("action needs one permutation per group element");
  const size_t pts = action.empty() ? 0 : action.front().size();
  std::vector<std::pair<UnitId, UnitId>> ends;
  for (size_t g = 0; g < h.order; ++g) {
    if (action[g].size() != pts) throw Malformed("ragged action table");
    for (size_t p = 0; p < pts; ++p) ends.emplace_back(static_cast<UnitId>(p), static_cast<UnitId>(action[g][p]));
  }
  auto encode = [pts](size_t g, size_t p) { return static_cast<ArrowId>(g * pts + p); };
  return assemble(
      pts, ends,
      [&](ArrowId a, ArrowId b) {
        size_t ga = static_cast<size_t>(a) / pts;
        size_t gb = static_cast<size_t>(b) / pts, pb = static_cast<size_t>(b) % pts;
        return encode(static_cast<size_t>(h.mul(static_cast<int>(ga), static_cast<int>(gb))), pb);
      },
      [&](ArrowId a) {
        size_t g = static_cast<size_t>(a) / pts, p = static_cast<size_t>(a) % pts;
        return encode(static_cast<size_t>(h.inv(static_cast<int>(g))), static_cast<size_t>(action[g][p]));
      },
      [&](UnitId x) { return encode(0, static_cast<size_t>(x)); });
}

GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts) {
  GroupoidSpec spec;
  int64_t unit_off = 0, arrow_off = 0;
  for (const auto& p : parts) {
    GroupoidSpec s = p->to_spec();
    for (size_t i = 0; i < s.units.size(); ++i) spec.units.push_back(std::to_string(spec.units.size()));
    for (auto a : s.arrows) spec.arrows.push_back({a.id + arrow_off, a.src + unit_off, a.rng + unit_off});
    for (auto [a, b, c] : s.compose) spec.compose.push_back({a + arrow_off, b + arrow_off, c + arrow_off});
    for (auto [a, b] : s.inverse) spec.inverse.push_back({a + arrow_off, b + arrow_off});
    for (auto [x, a] : s.unit_arrows) spec.unit_arrows.push_back({x + unit_off, a + arrow_off});
    unit_off += static_cast<int64_t>(s.units.size());
    arrow_off += static_cast<int64_t>(s.arrows.size());
  }
  return validate_groupoid(spec);
}

GroupoidPtr relabel(const FiniteGroupoid& g, const std::vector<UnitId>& unit_perm,
                    const std::vector<ArrowId>& arrow_perm) {
  GroupoidSpec s = g.to_spec();
  GroupoidSpec out;
  out.units.resize(s.units.size());
  for (size_t x = 0; x < s.units.size(); ++x) out.units[static_cast<size_t>(unit_perm[x])] = std::to_string(unit_perm[x]);
  auto A = [&](int64_t a) { return static_cast<int64_t>(arrow_perm[static_cast<size_t>(a)]); };
  auto U = [&](int64_t x) { return static_cast<int64_t>(unit_perm[static_cast<size_t>(x)]); };
  for (auto a : s.arrows) out.arrows.push_back({A(a.id), U(a.src), U(a.rng)});
  for (auto [a, b, c] : s.compose) out.compose.push_back({A(a), A(b), A(c)});
  for (auto [a, b] : s.inverse) out.inverse.push_back({A(a), A(b)});
  for (auto [x, a] : s.unit_arrows) out.unit_arrows.push_back({U(x), A(a)});
  return validate_groupoid(out);
}

}  // namespace gwb
