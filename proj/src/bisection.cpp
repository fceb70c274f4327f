#include "gwb/bisection.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gwb/errors.hpp"

namespace gwb {

bool is_bisection(const FiniteGroupoid& g, const std::vector<ArrowId>& arrows) {
  std::vector<bool> src(g.num_units(), false), rng(g.num_units(), false);
  for (ArrowId a : arrows) {
    if (!g.has_arrow(a)) return false;
    auto s = static_cast<size_t>(g.source(a));
    auto r = static_cast<size_t>(g.range(a));
    if (src[s] || rng[r]) return false;
    src[s] = rng[r] = true;
  }
  return true;
}

Bisection make_bisection(const FiniteGroupoid& g, std::vector<ArrowId> arrows) {
  std::sort(arrows.begin(), arrows.end());
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  std::map<UnitId, ArrowId> by_src, by_rng;
  for (ArrowId a : arrows) {
    if (!g.has_arrow(a)) throw NotABisection("unknown arrow " + std::to_string(a));
    auto [it, fresh] = by_src.emplace(g.source(a), a);
    if (!fresh)
      throw NotABisection("arrows " + std::to_string(it->second) + " and " + std::to_string(a) + " share a source");
    auto [jt, fresh2] = by_rng.emplace(g.range(a), a);
    if (!fresh2)
      throw NotABisection("arrows " + std::to_string(jt->second) + " and " + std::to_string(a) + " share a range");
  }
  return arrows;
}

Bisection bisection_product(const FiniteGroupoid& g, const Bisection& u, const Bisection& v) {
  std::vector<ArrowId> by_range(g.num_units(), kNoArrow);
  for (ArrowId b : v) by_range[static_cast<size_t>(g.range(b))] = b;
  Bisection out;
  for (ArrowId a : u) {
    ArrowId b = by_range[static_cast<size_t>(g.source(a))];
    if (b != kNoArrow) out.push_back(g.compose(a, b));
  }
  std::sort(out.begin(), out.end());
  if (!is_bisection(g, out)) throw AxiomViolation("product of bisections is not a bisection");
  return out;
}

Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& u) {
  Bisection out;
  out.reserve(u.size());
  for (ArrowId a : u) out.push_back(g.inverse(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UnitId> bisection_sources(const FiniteGroupoid& g, const Bisection& v) {
  std::vector<UnitId> out;
  for (ArrowId a : v) out.push_back(g.source(a));
  std::sort(out.begin(), out.end());
  return out;
}

BisectionSemigroup generate_semigroup(const FiniteGroupoid& g, const std::vector<std::vector<ArrowId>>& x,
                                      size_t cap) {
  BisectionSemigroup s;
  std::vector<Bisection> list;
  std::set<Bisection> seen;
  auto add = [&](Bisection b) {
    if (b.empty()) return;
    if (seen.insert(b).second) {
      list.push_back(std::move(b));
      if (list.size() > cap) throw ResourceLimit("bisection semigroup exceeds " + std::to_string(cap) + " elements");
    }
  };
  bool empty_generator = false;
  for (const auto& gen : x) {
    Bisection b = make_bisection(g, gen);
    s.generators.push_back(b);
    if (b.empty()) empty_generator = true;
    add(bisection_inverse(g, b));
    add(std::move(b));
  }
  for (size_t i = 0; i < list.size(); ++i) {
    add(bisection_inverse(g, list[i]));
    for (size_t j = 0; j <= i; ++j) {
      add(bisection_product(g, list[i], list[j]));
      add(bisection_product(g, list[j], list[i]));
    }
  }
  if (empty_generator) list.emplace_back();
  std::sort(list.begin(), list.end());
  std::vector<bool> covered(g.num_arrows(), false);
  for (const auto& b : list)
    for (ArrowId a : b) covered[static_cast<size_t>(a)] = true;
  s.cover = std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
  s.elements = std::move(list);
  return s;
}

Subgroupoid union_subgroupoid(const GroupoidPtr& g, const BisectionSemigroup& s) {
  std::vector<ArrowId> arrows;
  for (const auto& b : s.elements) arrows.insert(arrows.end(), b.begin(), b.end());
  std::sort(arrows.begin(), arrows.end());
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  return subgroupoid(g, arrows);
}

std::optional<std::string> check_inverse_semigroup_laws(const FiniteGroupoid& g, const BisectionSemigroup& s) {
  std::set<Bisection> members(s.elements.begin(), s.elements.end());
  auto in = [&](const Bisection& b) { return b.empty() || members.count(b) > 0; };
  std::vector<const Bisection*> idempotents;
  for (const auto& v : s.elements) {
    Bisection vi = bisection_inverse(g, v);
    if (!in(vi)) return "inverse not closed";
    if (bisection_product(g, bisection_product(g, v, vi), v) != v) return "V V^-1 V != V";
    if (bisection_product(g, v, v) == v) idempotents.push_back(&v);
    for (const auto& w : s.elements)
      if (!in(bisection_product(g, v, w))) return "product not closed";
  }
  for (const Bisection* e : idempotents)
    for (const Bisection* f : idempotents)
      if (bisection_product(g, *e, *f) != bisection_product(g, *f, *e)) return "idempotents do not commute";
  return std::nullopt;
}

Filtration validate_filtration(const GroupoidPtr& gp, const std::vector<std::vector<int64_t>>& chain) {
  const FiniteGroupoid& g = *gp;
  Filtration f;
  f.ambient = gp;
  for (size_t i = 0; i < chain.size(); ++i) {
    std::vector<ArrowId> level;
    for (int64_t a : chain[i]) {
      if (!g.has_arrow(a))
        throw NotSubgroupoid("level " + std::to_string(i) + ": unknown arrow " + std::to_string(a));
      level.push_back(static_cast<ArrowId>(a));
    }
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    try {
      subgroupoid(gp, level);
    } catch (const NotSubgroupoid& e) {
      throw NotSubgroupoid("level " + std::to_string(i) + ": " + e.what());
    }
    if (i > 0 && !std::includes(level.begin(), level.end(), f.levels.back().begin(), f.levels.back().end()))
      throw NotIncreasing("level " + std::to_string(i) + " does not contain level " + std::to_string(i - 1));
    f.levels.push_back(std::move(level));
  }
  std::vector<bool> present(g.num_arrows(), false);
  if (!f.levels.empty())
    for (ArrowId a : f.levels.back()) present[static_cast<size_t>(a)] = true;
  std::string missing;
  for (size_t a = 0; a < present.size(); ++a) {
    if (present[a]) continue;
    if (!missing.empty()) missing += ",";
    missing += std::to_string(a);
  }
  if (!missing.empty()) throw UnionIncomplete("missing arrows " + missing);
  return f;
}

AfReport is_af_filtration(const Filtration& f) {
  const FiniteGroupoid& g = *f.ambient;
  AfReport r;
  for (size_t i = 0; i < f.levels.size(); ++i) {
    AfLevelReport lr;
    lr.level = i;
    for (ArrowId a : f.levels[i])
      if (g.source(a) == g.range(a) && !g.is_unit_arrow(a)) lr.isotropy_witnesses.push_back(a);
    lr.principal = lr.isotropy_witnesses.empty();
    r.af = r.af && lr.principal;
    r.levels.push_back(std::move(lr));
  }
  return r;
}

}  // namespace gwb
