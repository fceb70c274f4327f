#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "gwb/errors.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/json_io.hpp"
#include "gwb/random.hpp"

using namespace gwb;

namespace {

GroupoidSpec c2_spec() {
  GroupoidSpec s;
  s.units = {"x"};
  s.arrows = {{0, 0, 0}, {1, 0, 0}};
  s.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  s.inverse = {{0, 0}, {1, 1}};
  s.unit_arrows = {{0, 0}};
  return s;
}

size_t brute_count(const FiniteGroupoid& g, size_t n) {
  return oracle::count_composable(
      g.num_arrows(), n, [&](size_t a) { return g.source(static_cast<ArrowId>(a)); },
      [&](size_t a) { return g.range(static_cast<ArrowId>(a)); });
}

}  // namespace

TEST_CASE("a valid groupoid description round-trips") {
  const GroupoidPtr g = validate_groupoid(c2_spec());
  CHECK(g->num_units() == 1);
  CHECK(g->num_arrows() == 2);
  CHECK(g->compose(1, 1) == 0);
  CHECK(g->inverse(1) == 1);
  const GroupoidPtr again = validate_groupoid(groupoid_spec_from_json(groupoid_to_json(*g)));
  CHECK(groupoid_to_json(*again) == groupoid_to_json(*g));
}

TEST_CASE("axiom violations are reported by name") {
  GroupoidSpec s = c2_spec();
  s.compose[3] = {1, 1, 1};
  CHECK_THROWS_AS(validate_groupoid(s), AxiomViolation);

  s = c2_spec();
  s.compose.pop_back();
  CHECK_THROWS_AS(validate_groupoid(s), AxiomViolation);

  s = c2_spec();
  s.arrows[1].src = 3;
  CHECK_THROWS_AS(validate_groupoid(s), UnknownUnit);

  s = c2_spec();
  s.inverse[1] = {1, 0};
  CHECK_THROWS_AS(validate_groupoid(s), AxiomViolation);

  s = c2_spec();
  s.unit_arrows = {{0, 1}};
  CHECK_THROWS_AS(validate_groupoid(s), AxiomViolation);

  s = c2_spec();
  s.compose.push_back({1, 1, 7});
  CHECK_THROWS(validate_groupoid(s));
}

TEST_CASE("associativity check respects the triple cap") {
  CHECK_THROWS_AS(validate_groupoid(pair_groupoid(5)->to_spec(), 10), ResourceLimit);
  CHECK_NOTHROW(validate_groupoid(pair_groupoid(5)->to_spec()));
}

TEST_CASE("builders produce the expected shapes") {
  const GroupoidPtr p = pair_groupoid(4);
  CHECK(p->num_arrows() == 16);
  CHECK(is_principal(*p));
  CHECK_FALSE(is_group_bundle(*p));
  CHECK(orbits(*p).classes.size() == 1);
  CHECK(p->range(1 * 4 + 3) == 1);
  CHECK(p->source(1 * 4 + 3) == 3);

  const GroupoidPtr s3 = group_groupoid(symmetric_group_3());
  CHECK(is_group_bundle(*s3));
  CHECK(isotropy_group(*s3, 0).order() == 6);

  const GroupoidPtr t = transitive_groupoid(3, cyclic_group(2));
  CHECK(t->num_arrows() == 18);
  CHECK(isotropy_group(*t, 2).order() == 2);
  CHECK(orbits(*t).classes.size() == 1);

  const GroupoidPtr u = disjoint_union({pair_groupoid(2), group_groupoid(cyclic_group(3)), pair_groupoid(1)});
  CHECK(u->num_units() == 4);
  CHECK(orbits(*u).classes.size() == 3);
  CHECK(transversal(*u) == std::vector<UnitId>{0, 2, 3});
  CHECK(orbit_stratum(*u, 2) == std::vector<UnitId>{0, 1});

  // C2 acting on two points by swapping: one orbit, trivial isotropy.
  const GroupoidPtr act = action_groupoid(cyclic_group(2), {{0, 1}, {1, 0}});
  CHECK(is_principal(*act));
  CHECK(orbits(*act).classes.size() == 1);
}

TEST_CASE("every catalogue group satisfies the group axioms") {
  for (const FiniteGroup& h : small_group_catalogue()) {
    for (int a = 0; a < static_cast<int>(h.order); ++a) {
      CHECK(h.mul(a, h.inv(a)) == 0);
      for (int b = 0; b < static_cast<int>(h.order); ++b)
        for (int c = 0; c < static_cast<int>(h.order); ++c) CHECK(h.mul(h.mul(a, b), c) == h.mul(a, h.mul(b, c)));
    }
    CHECK_NOTHROW(group_groupoid(h));
  }
}

TEST_CASE("composable tuple counts match brute force") {
  Rng rng(21);
  for (int k = 0; k < 20; ++k) {
    const GroupoidPtr g = random_groupoid(rng);
    for (size_t n = 1; n <= 3; ++n) {
      const size_t expected = brute_count(*g, n);
      CHECK(count_composable(*g, n) == expected);
      CHECK(composable_tuples(*g, n).size() == expected);
    }
    CHECK(composable_tuples(*g, 0).size() == g->num_units());
  }
  CHECK_THROWS_AS(composable_tuples(*pair_groupoid(4), 3, 100), ResourceLimit);
}

TEST_CASE("tuple spaces are lexicographic and searchable") {
  const GroupoidPtr g = transitive_groupoid(2, cyclic_group(2));
  const TupleSpace t = composable_tuples(*g, 2);
  for (size_t i = 0; i + 1 < t.size(); ++i) CHECK(t.tuple_vector(i) < t.tuple_vector(i + 1));
  for (size_t i = 0; i < t.size(); ++i) {
    CHECK(is_composable(*g, t.tuple_vector(i)));
    CHECK(t.find(t.tuple_vector(i)) == i);
  }
  const TupleSpace nd = nondegenerate_tuples(*g, 2);
  for (size_t i = 0; i < nd.size(); ++i)
    for (ArrowId a : nd.tuple_vector(i)) CHECK_FALSE(g->is_unit_arrow(a));
}

TEST_CASE("face maps satisfy the simplicial identities") {
  Rng rng(22);
  for (int k = 0; k < 15; ++k) {
    const GroupoidPtr g = random_groupoid(rng);
    for (size_t n = 2; n <= 3; ++n) {
      const TupleSpace t = composable_tuples(*g, n + 1);
      for (size_t idx = 0; idx < t.size(); idx += 1 + t.size() / 50) {
        const auto tuple = t.tuple_vector(idx);
        for (size_t j = 1; j <= n; ++j)
          for (size_t i = 0; i < j; ++i)
            CHECK(face_map(*g, n - 1, i, face_map(*g, n, j, tuple)) ==
                  face_map(*g, n - 1, j - 1, face_map(*g, n, i, tuple)));
      }
    }
  }
  const GroupoidPtr c2 = group_groupoid(cyclic_group(2));
  CHECK_THROWS_AS(face_map(*c2, 0, 0, {1}), IndexOutOfRange);
  CHECK_THROWS_AS(face_map(*c2, 1, 2, {1, 1}), IndexOutOfRange);
  CHECK(augmentation(*c2, 1) == 0);
}

TEST_CASE("subgroupoids, restrictions and relabelling") {
  const GroupoidPtr p = pair_groupoid(3);
  const Subgroupoid s = subgroupoid(p, {0, 1, 3, 4});
  CHECK(s.groupoid->num_units() == 2);
  CHECK(s.arrow_to_ambient == std::vector<ArrowId>{0, 1, 3, 4});
  CHECK_THROWS_AS(subgroupoid(p, {0, 1}), NotSubgroupoid);

  const Restriction r = restrict(p, {0, 2});
  CHECK(r.full);
  CHECK(r.sub.groupoid->num_arrows() == 4);
  CHECK_THROWS_AS(restrict(p, {7}), UnknownUnit);

  const GroupoidPtr u = disjoint_union({pair_groupoid(2), pair_groupoid(1)});
  CHECK_FALSE(restrict(u, {0}).full);

  Rng rng(23);
  for (int k = 0; k < 10; ++k) {
    const GroupoidPtr g = random_groupoid(rng);
    std::vector<UnitId> up(g->num_units());
    std::vector<ArrowId> ap(g->num_arrows());
    std::iota(up.begin(), up.end(), 0);
    std::iota(ap.begin(), ap.end(), 0);
    std::shuffle(up.begin(), up.end(), rng);
    std::shuffle(ap.begin(), ap.end(), rng);
    const GroupoidPtr h = relabel(*g, up, ap);
    for (size_t a = 0; a < g->num_arrows(); ++a) {
      CHECK(h->source(ap[a]) == up[static_cast<size_t>(g->source(static_cast<ArrowId>(a)))]);
      for (size_t b = 0; b < g->num_arrows(); ++b) {
        const ArrowId c = g->compose(static_cast<ArrowId>(a), static_cast<ArrowId>(b));
        CHECK(h->compose(ap[a], ap[b]) == (c == kNoArrow ? kNoArrow : ap[static_cast<size_t>(c)]));
      }
    }
    CHECK(count_composable(*h, 2) == count_composable(*g, 2));
  }
}

TEST_CASE("random groupoids are valid and bounded") {
  Rng rng(24);
  for (int k = 0; k < 50; ++k) {
    const GroupoidPtr g = random_groupoid(rng);
    CHECK(g->num_arrows() <= 12);
    CHECK_NOTHROW(validate_groupoid(g->to_spec()));
  }
  Rng a(99), b(99);
  CHECK(groupoid_to_json(*random_groupoid(a)) == groupoid_to_json(*random_groupoid(b)));
}
