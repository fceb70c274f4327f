#include <algorithm>
#include <set>

#include "doctest.h"

#include "gwb/bisection.hpp"
#include "gwb/errors.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/random.hpp"

using namespace gwb;

namespace {

using Set = std::vector<ArrowId>;

Set product(const FiniteGroupoid& g, const Set& u, const Set& v) {
  std::set<ArrowId> out;
  for (ArrowId a : u)
    for (ArrowId b : v)
      if (g.source(a) == g.range(b)) out.insert(g.compose(a, b));
  return {out.begin(), out.end()};
}

Set inverse(const FiniteGroupoid& g, const Set& u) {
  std::set<ArrowId> out;
  for (ArrowId a : u) out.insert(g.inverse(a));
  return {out.begin(), out.end()};
}

// Closure by repeated saturation, independent of the library's worklist.
std::set<Set> closure(const FiniteGroupoid& g, const std::vector<Set>& gens) {
  std::set<Set> s;
  for (Set v : gens) {
    std::sort(v.begin(), v.end());
    s.insert(v);
    s.insert(inverse(g, v));
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Set> cur(s.begin(), s.end());
    for (const Set& a : cur)
      for (const Set& b : cur) {
        Set p = product(g, a, b);
        if (!p.empty() && s.insert(p).second) grew = true;
      }
  }
  return s;
}

}  // namespace

TEST_CASE("bisections are exactly the sets with injective source and range") {
  const GroupoidPtr p = pair_groupoid(3);
  CHECK(is_bisection(*p, {1, 5, 6}));
  CHECK_FALSE(is_bisection(*p, {1, 2}));  // same range 0
  CHECK_FALSE(is_bisection(*p, {1, 4}));  // same source 1
  CHECK(make_bisection(*p, {6, 1, 5, 1}) == Bisection{1, 5, 6});
  CHECK_THROWS_AS(make_bisection(*p, {1, 2}), NotABisection);
  CHECK_THROWS(make_bisection(*p, {42}));
}

TEST_CASE("products, inverses and source sets") {
  const GroupoidPtr p = pair_groupoid(3);
  const Bisection swap01 = make_bisection(*p, {1, 3});
  CHECK(bisection_product(*p, swap01, swap01) == Bisection{0, 4});
  CHECK(bisection_inverse(*p, make_bisection(*p, {1})) == Bisection{3});
  CHECK(bisection_sources(*p, make_bisection(*p, {1, 5})) == std::vector<UnitId>{1, 2});
  Rng rng(31);
  for (int k = 0; k < 30; ++k) {
    const GroupoidPtr g = random_groupoid(rng);
    const auto cover = random_bisection_cover(*g, rng);
    for (const auto& u : cover)
      for (const auto& v : cover) {
        const Bisection uv = bisection_product(*g, make_bisection(*g, u), make_bisection(*g, v));
        CHECK(uv == product(*g, u, v));
        CHECK(is_bisection(*g, uv));
      }
  }
}

TEST_CASE("generated semigroups match saturation and obey the inverse semigroup laws") {
  Rng rng(32);
  for (int k = 0; k < 40; ++k) {
    const GroupoidPtr g = random_groupoid(rng);
    const auto cover = random_bisection_cover(*g, rng);
    const BisectionSemigroup s = generate_semigroup(*g, cover);
    const std::set<Set> expected = closure(*g, cover);
    CHECK(std::set<Set>(s.elements.begin(), s.elements.end()) == expected);
    CHECK(std::is_sorted(s.elements.begin(), s.elements.end()));
    CHECK(s.cover);
    CHECK_FALSE(check_inverse_semigroup_laws(*g, s).has_value());
    CHECK(union_subgroupoid(g, s).groupoid->num_arrows() == g->num_arrows());
  }
}

TEST_CASE("cover detection and the semigroup cap") {
  const GroupoidPtr p = pair_groupoid(3);
  const BisectionSemigroup partial = generate_semigroup(*p, {{1}});
  CHECK_FALSE(partial.cover);
  // {1} and its inverse {3} generate {1}, {3}, {0}, {4}.
  CHECK(partial.elements.size() == 4);
  CHECK(union_subgroupoid(p, partial).groupoid->num_units() == 2);
  // a 3-cycle, its inverse and the identity: three elements
  CHECK(generate_semigroup(*p, {{1, 5, 6}}, 3).elements.size() == 3);
  CHECK_THROWS_AS(generate_semigroup(*p, {{1, 5, 6}, {2, 3, 7}}, 2), ResourceLimit);
}

TEST_CASE("filtrations are validated") {
  const GroupoidPtr p = pair_groupoid(3);
  CHECK_NOTHROW(validate_filtration(p, {{0, 4, 8}, {0, 1, 3, 4, 8}, {0, 1, 2, 3, 4, 5, 6, 7, 8}}));
  CHECK_THROWS_AS(validate_filtration(p, {{0, 1}, {0, 1, 2, 3, 4, 5, 6, 7, 8}}), NotSubgroupoid);
  CHECK_THROWS_AS(validate_filtration(p, {{0, 1, 3, 4, 8}, {0, 4, 8}, {0, 1, 2, 3, 4, 5, 6, 7, 8}}), NotIncreasing);
  CHECK_THROWS_AS(validate_filtration(p, {{0, 4, 8}, {0, 1, 3, 4, 8}}), UnionIncomplete);
}

TEST_CASE("AF detection reports isotropy witnesses") {
  const GroupoidPtr p = pair_groupoid(3);
  const AfReport ok = is_af_filtration(validate_filtration(p, {{0, 4, 8}, {0, 1, 2, 3, 4, 5, 6, 7, 8}}));
  CHECK(ok.af);
  CHECK(ok.levels.size() == 2);

  const GroupoidPtr t = transitive_groupoid(2, cyclic_group(2));
  std::vector<int64_t> all(t->num_arrows());
  std::iota(all.begin(), all.end(), 0);
  const AfReport bad = is_af_filtration(validate_filtration(t, {all}));
  CHECK_FALSE(bad.af);
  CHECK_FALSE(bad.levels.back().isotropy_witnesses.empty());
  for (ArrowId a : bad.levels.back().isotropy_witnesses) {
    CHECK(t->source(a) == t->range(a));
    CHECK_FALSE(t->is_unit_arrow(a));
  }

  Rng rng(33);
  for (int k = 0; k < 20; ++k) {
    const GroupoidPtr g = random_groupoid(rng);
    const Filtration f = validate_filtration(g, random_filtration(*g, rng));
    CHECK(is_af_filtration(f).af == is_principal(*g));
  }
}
