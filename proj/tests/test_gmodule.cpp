#include <numeric>

#include "doctest.h"

#include "gwb/errors.hpp"
#include "gwb/gmodule.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/random.hpp"

using namespace gwb;

namespace {

Matrix scalar(int64_t v) { return Matrix::from_rows({{Rational(v)}}); }

ModuleSpec c2_spec(int64_t generator_action) {
  ModuleSpec spec;
  spec.fibers.push_back({0, 1, Matrix(1, 0)});
  spec.actions.push_back({1, scalar(generator_action)});
  return spec;
}

// Number of classes of {g : s(g) ∈ H⁰} under g ~ g∘h, grouped by range.
std::vector<size_t> induced_classes(const Subgroupoid& h, const GModule& m, const FiniteGroupoid& g) {
  const size_t n = g.num_arrows();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t a = 0; a < n; ++a) {
    if (h.unit_from_ambient[static_cast<size_t>(g.source(static_cast<ArrowId>(a)))] < 0) continue;
    for (ArrowId b : h.arrow_to_ambient) {
      const ArrowId c = g.compose(static_cast<ArrowId>(a), b);
      if (c != kNoArrow) parent[find(a)] = find(static_cast<size_t>(c));
    }
  }
  std::vector<size_t> rank(g.num_units());
  for (size_t a = 0; a < n; ++a) {
    const UnitId s = g.source(static_cast<ArrowId>(a));
    const UnitId hs = h.unit_from_ambient[static_cast<size_t>(s)];
    if (hs < 0 || find(a) != a) continue;
    rank[static_cast<size_t>(g.range(static_cast<ArrowId>(a)))] += m.rank(hs);
  }
  return rank;
}

const std::vector<Ring>& rings() {
  static const std::vector<Ring> r = {Ring::integers(),     Ring::rationals(),  Ring::prime_field(2),
                                      Ring::prime_field(3), Ring::localized(2), Ring::localized(6)};
  return r;
}

}  // namespace

TEST_CASE("trivial modules") {
  const GroupoidPtr g = transitive_groupoid(2, cyclic_group(3));
  const GModule m = trivial_module(g, Ring::integers());
  CHECK(m.is_free());
  for (size_t x = 0; x < g->num_units(); ++x) CHECK(m.rank(static_cast<UnitId>(x)) == 1);
  for (size_t a = 0; a < g->num_arrows(); ++a) CHECK(m.action(static_cast<ArrowId>(a)) == Matrix::identity(1));
  CHECK_NOTHROW(check_gmodule(m));
}

TEST_CASE("module validation") {
  const GroupoidPtr c2 = group_groupoid(cyclic_group(2));
  CHECK_NOTHROW(validate_gmodule(c2, Ring::integers(), c2_spec(-1)));
  CHECK_THROWS_AS(validate_gmodule(c2, Ring::integers(), c2_spec(2)), FunctorialityViolation);
  // 2 has order two in F_3 only up to sign: 2·2 = 1.
  CHECK_NOTHROW(validate_gmodule(c2, Ring::prime_field(3), c2_spec(2)));

  ModuleSpec half = c2_spec(1);
  half.actions[0].matrix = Matrix::from_rows({{Rational(1, 2)}});
  CHECK_THROWS_AS(validate_gmodule(c2, Ring::integers(), half), NotInRing);

  ModuleSpec wide = c2_spec(1);
  wide.actions[0].matrix = Matrix(1, 2);
  CHECK_THROWS_AS(validate_gmodule(c2, Ring::integers(), wide), DimensionMismatch);

  ModuleSpec ghost = c2_spec(1);
  ghost.fibers[0].unit = 3;
  CHECK_THROWS_AS(validate_gmodule(c2, Ring::integers(), ghost), UnknownUnit);

  ModuleSpec twice = c2_spec(1);
  twice.actions.push_back(twice.actions[0]);
  CHECK_THROWS_AS(validate_gmodule(c2, Ring::integers(), twice), Malformed);

  ModuleSpec missing = c2_spec(1);
  missing.actions.clear();
  CHECK_THROWS_AS(validate_gmodule(c2, Ring::integers(), missing), Malformed);

  // A unit arrow acting nontrivially modulo relations.
  ModuleSpec unit_bad = c2_spec(1);
  unit_bad.actions.push_back({0, scalar(-1)});
  CHECK_THROWS_AS(validate_gmodule(c2, Ring::integers(), unit_bad), FunctorialityViolation);
  // ... which is fine once the fiber is Z/2.
  unit_bad.fibers[0].relations = scalar(2);
  CHECK_NOTHROW(validate_gmodule(c2, Ring::integers(), unit_bad));
}

TEST_CASE("random modules are functorial and round-trip through specs") {
  Rng rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const Ring& ring = rings()[static_cast<size_t>(trial) % rings().size()];
    const GModule m = random_module(g, ring, rng, 3);
    CHECK(m.is_free());
    CHECK_NOTHROW(check_gmodule(m));
    const GModule back = validate_gmodule(g, ring, m.to_spec());
    for (size_t a = 0; a < g->num_arrows(); ++a) CHECK(back.action(static_cast<ArrowId>(a)) == m.action(static_cast<ArrowId>(a)));
  }
}

TEST_CASE("restriction and induction ranks") {
  Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const Subgroupoid h = random_subgroupoid(g, rng);
    const GModule mh = random_module(h.groupoid, Ring::integers(), rng, 2);
    const GModule ind = induce(h, mh);
    CHECK_NOTHROW(check_gmodule(ind));
    const std::vector<size_t> expected = induced_classes(h, mh, *g);
    for (size_t x = 0; x < g->num_units(); ++x) CHECK(ind.rank(static_cast<UnitId>(x)) == expected[x]);

    const GModule mg = random_module(g, Ring::integers(), rng, 2);
    const GModule res = restrict_module(h, mg);
    for (size_t x = 0; x < h.groupoid->num_units(); ++x)
      CHECK(res.rank(static_cast<UnitId>(x)) == mg.rank(h.unit_to_ambient[x]));
    for (size_t a = 0; a < h.groupoid->num_arrows(); ++a)
      CHECK(res.action(static_cast<ArrowId>(a)) == mg.action(h.arrow_to_ambient[a]));
  }
  const GroupoidPtr p = pair_groupoid(2);
  const Subgroupoid other = subgroupoid(pair_groupoid(2), {0});
  CHECK_THROWS_AS(induce(other, trivial_module(p, Ring::integers())), NotSubgroupoid);
  CHECK_THROWS_AS(restrict_module(other, trivial_module(p, Ring::integers())), NotSubgroupoid);
}

TEST_CASE("inducing from the unit space counts arrows by range") {
  const GroupoidPtr g = transitive_groupoid(2, cyclic_group(3));
  std::vector<ArrowId> units;
  for (size_t x = 0; x < g->num_units(); ++x) units.push_back(g->unit_arrow(static_cast<UnitId>(x)));
  const Subgroupoid h = subgroupoid(g, units);
  const GModule ind = induce(h, trivial_module(h.groupoid, Ring::integers()));
  for (size_t x = 0; x < g->num_units(); ++x) CHECK(ind.rank(static_cast<UnitId>(x)) == g->with_range(static_cast<UnitId>(x)).size());
}

TEST_CASE("invariant submodules split the fibers") {
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const GModule m = random_module(g, Ring::integers(), rng, 2);
    const std::vector<int64_t> u = random_invariant_set(*g, rng);
    const InvariantSplit s = invariant_submodule(m, u);
    CHECK_NOTHROW(check_gmodule(s.sub));
    CHECK_NOTHROW(check_gmodule(s.quot));
    for (size_t x = 0; x < g->num_units(); ++x) {
      const bool in_u = std::find(u.begin(), u.end(), static_cast<int64_t>(x)) != u.end();
      CHECK(s.sub.rank(static_cast<UnitId>(x)) == (in_u ? m.rank(static_cast<UnitId>(x)) : 0));
      CHECK(s.quot.rank(static_cast<UnitId>(x)) == (in_u ? 0 : m.rank(static_cast<UnitId>(x))));
    }
  }
  const GModule p = trivial_module(pair_groupoid(3), Ring::integers());
  CHECK_THROWS_AS(invariant_submodule(p, {0}), NotInvariant);
  CHECK_THROWS_AS(invariant_submodule(p, {7}), UnknownUnit);
}

TEST_CASE("base change reads entries in the target ring") {
  const GroupoidPtr c2 = group_groupoid(cyclic_group(2));
  const GModule sign = validate_gmodule(c2, Ring::integers(), c2_spec(-1));
  const GModule f3 = base_change(sign, Ring::prime_field(3));
  CHECK(f3.ring() == Ring::prime_field(3));
  CHECK(f3.action(1) == scalar(2));
  CHECK(base_change(sign, Ring::prime_field(2)).action(1) == scalar(1));
  CHECK(base_change(sign, Ring::localized(6)).action(1) == scalar(-1));

  ModuleSpec spec = c2_spec(1);
  spec.fibers[0].relations = Matrix::from_rows({{Rational(1, 2)}});
  const GModule local = validate_gmodule(c2, Ring::localized(2), spec);
  CHECK_THROWS_AS(base_change(local, Ring::integers()), NotInRing);
  CHECK_NOTHROW(base_change(local, Ring::rationals()));
}
