#include "gwb/groupoid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gwb/errors.hpp"

namespace gwb {

namespace {

std::string arrow_list(std::initializer_list<int64_t> ids) {
  std::string s = "(";
  bool first = true;
  for (int64_t id : ids) {
    if (!first) s += ", ";
    s += std::to_string(id);
    first = false;
  }
  return s + ")";
}

[[noreturn]] void violation(const std::string& kind, const std::string& witness) {
  throw AxiomViolation(kind + " at arrows " + witness);
}

size_t saturating_add(size_t a, size_t b) {
  return a > std::numeric_limits<size_t>::max() - b ? std::numeric_limits<size_t>::max() : a + b;
}

size_t saturating_mul(size_t a, size_t b) {
  if (a == 0 || b == 0) return 0;
  return a > std::numeric_limits<size_t>::max() / b ? std::numeric_limits<size_t>::max() : a * b;
}

}  // namespace

GroupoidSpec FiniteGroupoid::to_spec() const {
  GroupoidSpec spec;
  spec.units = unit_names_;
  for (size_t g = 0; g < num_arrows(); ++g)
    spec.arrows.push_back({static_cast<int64_t>(g), src_[g], rng_[g]});
  for (size_t g = 0; g < num_arrows(); ++g) {
    for (ArrowId h : with_range(src_[g])) {
      spec.compose.push_back({static_cast<int64_t>(g), h, compose(static_cast<ArrowId>(g), h)});
    }
  }
  for (size_t g = 0; g < num_arrows(); ++g) spec.inverse.push_back({static_cast<int64_t>(g), inv_[g]});
  for (size_t x = 0; x < num_units(); ++x) spec.unit_arrows.push_back({static_cast<int64_t>(x), unit_arrow_[x]});
  return spec;
}

GroupoidPtr validate_groupoid(const GroupoidSpec& spec, size_t triple_cap) {
  auto g = std::make_shared<FiniteGroupoid>();
  const size_t nu = spec.units.size();
  const size_t na = spec.arrows.size();
  if (nu > static_cast<size_t>(std::numeric_limits<UnitId>::max()) ||
      na > static_cast<size_t>(std::numeric_limits<ArrowId>::max())) {
    throw ResourceLimit("groupoid too large for 32-bit ids");
  }
  g->unit_names_ = spec.units;

  auto check_arrow = [&](int64_t id, const char* where) {
    if (id < 0 || static_cast<size_t>(id) >= na)
      throw Malformed(std::string(where) + " refers to unknown arrow " + std::to_string(id));
  };
  auto check_unit = [&](int64_t x, const char* where) {
    if (x < 0 || static_cast<size_t>(x) >= nu)
      throw UnknownUnit(std::string(where) + " refers to unknown unit " + std::to_string(x));
  };

  g->src_.assign(na, -1);
  g->rng_.assign(na, -1);
  std::vector<bool> seen(na, false);
  for (const auto& a : spec.arrows) {
    if (a.id < 0 || static_cast<size_t>(a.id) >= na)
      throw Malformed("arrow ids must be 0.." + std::to_string(na) + "-1 without gaps; got " + std::to_string(a.id));
    if (seen[static_cast<size_t>(a.id)]) throw Malformed("duplicate arrow id " + std::to_string(a.id));
    seen[static_cast<size_t>(a.id)] = true;
    check_unit(a.src, "arrow src");
    check_unit(a.rng, "arrow rng");
    g->src_[static_cast<size_t>(a.id)] = static_cast<UnitId>(a.src);
    g->rng_[static_cast<size_t>(a.id)] = static_cast<UnitId>(a.rng);
  }

  g->by_source_.assign(nu, {});
  g->by_range_.assign(nu, {});
  g->pos_in_range_.assign(na, 0);
  for (size_t a = 0; a < na; ++a) {
    g->by_source_[static_cast<size_t>(g->src_[a])].push_back(static_cast<ArrowId>(a));
    auto& lst = g->by_range_[static_cast<size_t>(g->rng_[a])];
    g->pos_in_range_[a] = lst.size();
    lst.push_back(static_cast<ArrowId>(a));
  }
  g->offset_.assign(na, 0);
  size_t total = 0;
  for (size_t a = 0; a < na; ++a) {
    g->offset_[a] = total;
    total += g->by_range_[static_cast<size_t>(g->src_[a])].size();
  }
  g->table_.assign(total, kNoArrow);

  g->unit_arrow_.assign(nu, kNoArrow);
  for (const auto& [x, id] : spec.unit_arrows) {
    check_unit(x, "unit_arrows");
    check_arrow(id, "unit_arrows");
    auto& slot = g->unit_arrow_[static_cast<size_t>(x)];
    if (slot != kNoArrow) throw Malformed("duplicate unit arrow for unit " + std::to_string(x));
    if (g->src_[static_cast<size_t>(id)] != x || g->rng_[static_cast<size_t>(id)] != x)
      violation("unit-arrow-endpoints", arrow_list({id}));
    slot = static_cast<ArrowId>(id);
  }
  for (size_t x = 0; x < nu; ++x)
    if (g->unit_arrow_[x] == kNoArrow) throw Malformed("unit " + std::to_string(x) + " has no unit arrow");

  g->inv_.assign(na, kNoArrow);
  for (const auto& [a, b] : spec.inverse) {
    check_arrow(a, "inverse");
    check_arrow(b, "inverse");
    auto& slot = g->inv_[static_cast<size_t>(a)];
    if (slot != kNoArrow) throw Malformed("duplicate inverse entry for arrow " + std::to_string(a));
    slot = static_cast<ArrowId>(b);
  }
  for (size_t a = 0; a < na; ++a)
    if (g->inv_[a] == kNoArrow) throw Malformed("arrow " + std::to_string(a) + " has no inverse");

  for (const auto& [a, b, c] : spec.compose) {
    check_arrow(a, "compose");
    check_arrow(b, "compose");
    check_arrow(c, "compose");
    if (g->src_[static_cast<size_t>(a)] != g->rng_[static_cast<size_t>(b)])
      violation("compose-defined-on-non-composable-pair", arrow_list({a, b}));
    auto& slot = g->table_[g->offset_[static_cast<size_t>(a)] + g->pos_in_range_[static_cast<size_t>(b)]];
    if (slot != kNoArrow) throw Malformed("duplicate compose entry for " + arrow_list({a, b}));
    if (g->src_[static_cast<size_t>(c)] != g->src_[static_cast<size_t>(b)] ||
        g->rng_[static_cast<size_t>(c)] != g->rng_[static_cast<size_t>(a)])
      violation("compose-endpoints", arrow_list({a, b, c}));
    slot = static_cast<ArrowId>(c);
  }

  const FiniteGroupoid& G = *g;
  for (size_t a = 0; a < na; ++a)
    for (ArrowId b : G.with_range(G.source(static_cast<ArrowId>(a))))
      if (G.compose(static_cast<ArrowId>(a), b) == kNoArrow)
        violation("compose-missing", arrow_list({static_cast<int64_t>(a), b}));

  for (size_t a = 0; a < na; ++a) {
    const auto ga = static_cast<ArrowId>(a);
    if (G.compose(G.unit_arrow(G.range(ga)), ga) != ga) violation("left-unit", arrow_list({ga}));
    if (G.compose(ga, G.unit_arrow(G.source(ga))) != ga) violation("right-unit", arrow_list({ga}));
    const ArrowId ia = G.inverse(ga);
    if (G.source(ia) != G.range(ga) || G.range(ia) != G.source(ga)) violation("inverse-endpoints", arrow_list({ga, ia}));
    if (G.compose(ia, ga) != G.unit_arrow(G.source(ga))) violation("left-inverse", arrow_list({ga, ia}));
    if (G.compose(ga, ia) != G.unit_arrow(G.range(ga))) violation("right-inverse", arrow_list({ga, ia}));
  }

  if (count_composable(G, 3) > triple_cap)
    throw ResourceLimit("associativity check needs more than " + std::to_string(triple_cap) + " triples");
  for (size_t a = 0; a < na; ++a) {
    const auto f = static_cast<ArrowId>(a);
    for (ArrowId h1 : G.with_range(G.source(f))) {
      const ArrowId fg = G.compose(f, h1);
      for (ArrowId h2 : G.with_range(G.source(h1))) {
        if (G.compose(fg, h2) != G.compose(f, G.compose(h1, h2)))
          violation("associativity", arrow_list({f, h1, h2}));
      }
    }
  }
  return g;
}

OrbitPartition orbits(const FiniteGroupoid& g) {
  const size_t nu = g.num_units();
  std::vector<size_t> parent(nu);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    size_t s = find(static_cast<size_t>(g.source(static_cast<ArrowId>(a))));
    size_t r = find(static_cast<size_t>(g.range(static_cast<ArrowId>(a))));
    if (s != r) parent[std::max(s, r)] = std::min(s, r);
  }
  OrbitPartition p;
  p.class_of.assign(nu, 0);
  std::vector<size_t> class_of_root(nu, SIZE_MAX);
  for (size_t x = 0; x < nu; ++x) {
    size_t root = find(x);
    if (class_of_root[root] == SIZE_MAX) {
      class_of_root[root] = p.classes.size();
      p.classes.emplace_back();
    }
    p.class_of[x] = class_of_root[root];
    p.classes[class_of_root[root]].push_back(static_cast<UnitId>(x));
  }
  return p;
}

IsotropyGroup isotropy_group(const FiniteGroupoid& g, int64_t x) {
  if (!g.has_unit(x)) throw UnknownUnit("unit " + std::to_string(x) + " does not exist");
  IsotropyGroup iso;
  iso.unit = static_cast<UnitId>(x);
  iso.elements.push_back(g.unit_arrow(iso.unit));
  for (ArrowId a : g.with_source(iso.unit))
    if (g.range(a) == iso.unit && a != iso.elements.front()) iso.elements.push_back(a);
  std::sort(iso.elements.begin() + 1, iso.elements.end());
  return iso;
}

bool is_principal(const FiniteGroupoid& g) {
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    const auto id = static_cast<ArrowId>(a);
    if (g.source(id) == g.range(id) && !g.is_unit_arrow(id)) return false;
  }
  return true;
}

bool is_group_bundle(const FiniteGroupoid& g) {
  for (size_t a = 0; a < g.num_arrows(); ++a)
    if (g.source(static_cast<ArrowId>(a)) != g.range(static_cast<ArrowId>(a))) return false;
  return true;
}

Subgroupoid subgroupoid(const GroupoidPtr& gp, const std::vector<ArrowId>& arrows) {
  const FiniteGroupoid& g = *gp;
  Subgroupoid sub;
  sub.ambient = gp;
  sub.arrow_from_ambient.assign(g.num_arrows(), kNoArrow);
  sub.unit_from_ambient.assign(g.num_units(), -1);
  for (ArrowId a : arrows) {
    if (!g.has_arrow(a)) throw NotSubgroupoid("unknown arrow " + std::to_string(a));
    sub.arrow_from_ambient[static_cast<size_t>(a)] = 0;
  }
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    if (sub.arrow_from_ambient[a] == kNoArrow) continue;
    sub.arrow_from_ambient[a] = static_cast<ArrowId>(sub.arrow_to_ambient.size());
    sub.arrow_to_ambient.push_back(static_cast<ArrowId>(a));
  }
  auto in = [&](ArrowId a) { return sub.arrow_from_ambient[static_cast<size_t>(a)] != kNoArrow; };
  for (ArrowId a : sub.arrow_to_ambient) {
    if (!in(g.inverse(a))) throw NotSubgroupoid("inverse of arrow " + std::to_string(a) + " is missing");
    for (ArrowId b : sub.arrow_to_ambient) {
      ArrowId c = g.compose(a, b);
      if (c != kNoArrow && !in(c))
        throw NotSubgroupoid("composite of arrows " + std::to_string(a) + " and " + std::to_string(b) + " is missing");
    }
    sub.unit_from_ambient[static_cast<size_t>(g.source(a))] = 0;
  }
  for (size_t x = 0; x < g.num_units(); ++x) {
    if (sub.unit_from_ambient[x] == -1) continue;
    sub.unit_from_ambient[x] = static_cast<UnitId>(sub.unit_to_ambient.size());
    sub.unit_to_ambient.push_back(static_cast<UnitId>(x));
  }

  GroupoidSpec spec;
  for (UnitId x : sub.unit_to_ambient) spec.units.push_back(g.unit_names()[static_cast<size_t>(x)]);
  for (size_t i = 0; i < sub.arrow_to_ambient.size(); ++i) {
    ArrowId a = sub.arrow_to_ambient[i];
    spec.arrows.push_back({static_cast<int64_t>(i), sub.unit_from_ambient[static_cast<size_t>(g.source(a))],
                           sub.unit_from_ambient[static_cast<size_t>(g.range(a))]});
    spec.inverse.push_back({static_cast<int64_t>(i), sub.arrow_from_ambient[static_cast<size_t>(g.inverse(a))]});
    for (ArrowId b : g.with_range(g.source(a))) {
      if (!in(b)) continue;
      spec.compose.push_back({static_cast<int64_t>(i), sub.arrow_from_ambient[static_cast<size_t>(b)],
                              sub.arrow_from_ambient[static_cast<size_t>(g.compose(a, b))]});
    }
  }
  for (size_t i = 0; i < sub.unit_to_ambient.size(); ++i) {
    ArrowId u = g.unit_arrow(sub.unit_to_ambient[i]);
    spec.unit_arrows.push_back({static_cast<int64_t>(i), sub.arrow_from_ambient[static_cast<size_t>(u)]});
  }
  sub.groupoid = validate_groupoid(spec, std::numeric_limits<size_t>::max());
  return sub;
}

Restriction restrict(const GroupoidPtr& gp, const std::vector<int64_t>& y) {
  const FiniteGroupoid& g = *gp;
  std::vector<bool> in_y(g.num_units(), false);
  for (int64_t x : y) {
    if (!g.has_unit(x)) throw UnknownUnit("unit " + std::to_string(x) + " does not exist");
    in_y[static_cast<size_t>(x)] = true;
  }
  std::vector<ArrowId> arrows;
  std::vector<bool> reached(g.num_units(), false);
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    const auto id = static_cast<ArrowId>(a);
    const bool s_in = in_y[static_cast<size_t>(g.source(id))];
    if (s_in) reached[static_cast<size_t>(g.range(id))] = true;
    if (s_in && in_y[static_cast<size_t>(g.range(id))]) arrows.push_back(id);
  }
  Restriction r;
  r.sub = subgroupoid(gp, arrows);
  r.full = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
  return r;
}

std::vector<UnitId> transversal(const FiniteGroupoid& g) {
  std::vector<UnitId> t;
  for (const auto& c : orbits(g).classes) t.push_back(c.front());
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<UnitId> orbit_stratum(const FiniteGroupoid& g, size_t k) {
  OrbitPartition p = orbits(g);
  std::vector<UnitId> out;
  for (size_t x = 0; x < g.num_units(); ++x)
    if (p.classes[p.class_of[x]].size() >= k) out.push_back(static_cast<UnitId>(x));
  return out;
}

size_t count_composable(const FiniteGroupoid& g, size_t n, bool skip_units) {
  if (n == 0) return g.num_units();
  // f[x] = number of k-tuples whose first arrow has range x.
  std::vector<size_t> f(g.num_units(), 1), next(g.num_units());
  for (size_t k = 0; k < n; ++k) {
    for (size_t x = 0; x < g.num_units(); ++x) {
      size_t acc = 0;
      for (ArrowId a : g.with_range(static_cast<UnitId>(x))) {
        if (skip_units && g.is_unit_arrow(a)) continue;
        acc = saturating_add(acc, f[static_cast<size_t>(g.source(a))]);
      }
      next[x] = acc;
    }
    std::swap(f, next);
  }
  size_t total = 0;
  for (size_t v : f) total = saturating_add(total, v);
  return total;
}

namespace {

void enumerate_tuples(const FiniteGroupoid& g, size_t n, bool skip_units, std::vector<ArrowId>& out) {
  std::vector<ArrowId> cur(n);
  // Iterative DFS; level k picks g_k among arrows with range source(g_{k-1}).
  std::vector<size_t> pos(n, 0);
  std::vector<const std::vector<ArrowId>*> choices(n, nullptr);
  std::vector<ArrowId> all(g.num_arrows());
  std::iota(all.begin(), all.end(), 0);
  choices[0] = &all;
  size_t k = 0;
  while (true) {
    const auto& lst = *choices[k];
    while (pos[k] < lst.size() && skip_units && g.is_unit_arrow(lst[pos[k]])) ++pos[k];
    if (pos[k] == lst.size()) {
      if (k == 0) break;
      --k;
      ++pos[k];
      continue;
    }
    cur[k] = lst[pos[k]];
    if (k + 1 == n) {
      out.insert(out.end(), cur.begin(), cur.end());
      ++pos[k];
      continue;
    }
    choices[k + 1] = &g.with_range(g.source(cur[k]));
    pos[k + 1] = 0;
    ++k;
  }
}

}  // namespace

TupleSpace composable_tuples(const FiniteGroupoid& g, size_t n, size_t cap) {
  TupleSpace ts;
  ts.n_ = n;
  ts.count_ = count_composable(g, n, false);
  if (ts.count_ > cap)
    throw ResourceLimit("composable " + std::to_string(n) + "-tuples exceed the cap of " + std::to_string(cap));
  if (n > 0) {
    ts.data_.reserve(saturating_mul(ts.count_, n));
    enumerate_tuples(g, n, false, ts.data_);
  }
  return ts;
}

TupleSpace nondegenerate_tuples(const FiniteGroupoid& g, size_t n, size_t cap) {
  TupleSpace ts;
  ts.n_ = n;
  ts.normalized_ = true;
  ts.count_ = count_composable(g, n, true);
  if (ts.count_ > cap)
    throw ResourceLimit("nondegenerate " + std::to_string(n) + "-tuples exceed the cap of " + std::to_string(cap));
  if (n > 0) {
    ts.data_.reserve(saturating_mul(ts.count_, n));
    enumerate_tuples(g, n, true, ts.data_);
  }
  return ts;
}

std::optional<size_t> TupleSpace::find(const ArrowId* t) const {
  if (n_ == 0) {
    if (t[0] < 0 || static_cast<size_t>(t[0]) >= count_) return std::nullopt;
    return static_cast<size_t>(t[0]);
  }
  size_t lo = 0, hi = count_;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    const ArrowId* m = tuple(mid);
    if (std::lexicographical_compare(m, m + n_, t, t + n_)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count_ && std::equal(t, t + n_, tuple(lo))) return lo;
  return std::nullopt;
}

bool is_composable(const FiniteGroupoid& g, const std::vector<ArrowId>& t) {
  for (ArrowId a : t)
    if (!g.has_arrow(a)) return false;
  for (size_t i = 0; i + 1 < t.size(); ++i)
    if (g.source(t[i]) != g.range(t[i + 1])) return false;
  return true;
}

std::vector<ArrowId> face_map(const FiniteGroupoid& g, size_t n, size_t i, const std::vector<ArrowId>& t) {
  if (n == 0) throw IndexOutOfRange("face maps need n >= 1; degree 0 uses the source augmentation");
  if (i > n) throw IndexOutOfRange("face index " + std::to_string(i) + " exceeds " + std::to_string(n));
  if (t.size() != n + 1) throw IndexOutOfRange("tuple length must be " + std::to_string(n + 1));
  if (!is_composable(g, t)) throw IndexOutOfRange("tuple is not composable");
  std::vector<ArrowId> out;
  out.reserve(n);
  if (i == 0) {
    out.assign(t.begin() + 1, t.end());
    return out;
  }
  for (size_t k = 0; k < t.size(); ++k) {
    if (k == i - 1) {
      out.push_back(g.compose(t[k], t[k + 1]));
      ++k;
    } else {
      out.push_back(t[k]);
    }
  }
  return out;
}

}  // namespace gwb
