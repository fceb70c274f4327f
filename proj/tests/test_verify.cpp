#include "doctest.h"

#include "gwb/errors.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/random.hpp"
#include "gwb/suites.hpp"
#include "gwb/verify.hpp"

using namespace gwb;

namespace {

const std::vector<ModuleInvariants> kC2 = {
    {1, {}}, {0, {Rational(2)}}, {0, {}}, {0, {Rational(2)}}};

std::vector<ArrowId> isotropy_at_zero(const FiniteGroupoid& g) {
  const IsotropyGroup iso = isotropy_group(g, 0);
  return iso.elements;
}

}  // namespace

TEST_CASE("Shapiro: inducing from an isotropy group") {
  const GroupoidPtr g = transitive_groupoid(3, cyclic_group(2));
  const Subgroupoid h = subgroupoid(g, isotropy_at_zero(*g));
  const ComparisonReport r = shapiro_verify(h, trivial_module(h.groupoid, Ring::integers()), 3);
  CHECK(r.equal);
  REQUIRE(r.degrees.size() == 4);
  for (size_t n = 0; n <= 3; ++n) {
    CHECK(r.degrees[n].rhs == kC2[n]);
    CHECK(r.degrees[n].lhs == kC2[n]);
  }
}

TEST_CASE("Shapiro on random subgroupoids") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const Subgroupoid h = random_subgroupoid(g, rng);
    const Ring& ring = batch_rings()[static_cast<size_t>(trial) % batch_rings().size()];
    CHECK(shapiro_verify(h, random_module(h.groupoid, ring, rng, 2), 2).equal);
  }
}

TEST_CASE("Morita reduction to a transversal") {
  const GroupoidPtr g = transitive_groupoid(3, cyclic_group(2));
  const MoritaReport r = morita_reduce(trivial_module(g, Ring::integers()), 3);
  CHECK(r.y == std::vector<UnitId>{0});
  CHECK(r.comparison.equal);
  CHECK(r.witness.verified);
  for (size_t n = 0; n <= 3; ++n) CHECK(r.comparison.degrees[n].lhs == kC2[n]);

  Rng rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidPtr h = random_groupoid(rng);
    const MoritaReport m = morita_reduce(random_module(h, Ring::integers(), rng, 2), 2);
    CHECK(m.comparison.equal);
    CHECK(m.y == transversal(*h));
  }
}

TEST_CASE("long exact sequences for invariant unit sets") {
  const GroupoidPtr g = disjoint_union({pair_groupoid(2), group_groupoid(cyclic_group(2))});
  const LesReport r = les_verify(trivial_module(g, Ring::integers()), {2}, 2);
  CHECK(r.chain_maps);
  CHECK(r.short_exact);
  CHECK(r.exact);
  CHECK(r.direct_sum_matches);
  CHECK(r.complement == std::vector<UnitId>{0, 1});
  CHECK(r.h_sub[1] == kC2[1]);
  CHECK(r.h_quot[1].is_zero());
  CHECK(r.h_total[1] == kC2[1]);
  for (const LesNode& node : r.nodes) CHECK(node.exact);

  Rng rng(73);
  RandomGroupoidOptions small;
  small.max_arrows = 8;
  small.min_components = 2;
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidPtr h = random_groupoid(rng, small);
    const GModule m = random_module(h, batch_rings()[static_cast<size_t>(trial) % 6], rng, 2);
    const LesReport les = les_verify(m, random_invariant_set(*h, rng), 2);
    CHECK(les.exact);
    CHECK(les.direct_sum_matches);
    // Invariant sets are unions of orbits, so the sequence splits and every
    // connecting map vanishes.
    for (const Matrix& d : les.connecting) CHECK(d.is_zero());
  }
}

TEST_CASE("LES input errors") {
  const GModule p = trivial_module(pair_groupoid(3), Ring::integers());
  CHECK_THROWS_AS(les_verify(p, {0}, 2), NotInvariant);
  CHECK_THROWS_AS(les_verify(p, {5}, 2), UnknownUnit);
  const GroupoidPtr c2 = group_groupoid(cyclic_group(2));
  ModuleSpec spec;
  spec.fibers.push_back({0, 1, Matrix::from_rows({{Rational(2)}})});
  spec.actions.push_back({1, Matrix::identity(1)});
  CHECK_THROWS_AS(les_verify(validate_gmodule(c2, Ring::integers(), spec), {0}, 1), IncompatibleModules);
}

TEST_CASE("continuity along a filtration of the pair groupoid") {
  const GroupoidPtr p = pair_groupoid(3);
  const ContinuityReport r =
      continuity_verify(p, {{0, 4, 8}, {0, 1, 3, 4, 8}, {0, 1, 2, 3, 4, 5, 6, 7, 8}}, Ring::integers(), 2);
  CHECK(r.passed);
  CHECK(r.composites_match);
  CHECK(r.terminal_iso);
  CHECK(r.terminal.equal);
  REQUIRE(r.h0_maps.size() == 2);
  CHECK(r.h0_maps[0] == Matrix::from_rows({{Rational(1), Rational(1), Rational(0)}, {Rational(0), Rational(0), Rational(1)}}));
  CHECK(r.h0_maps[1] == Matrix::from_rows({{Rational(1), Rational(1)}}));
  CHECK_THROWS_AS(continuity_verify(p, {{0, 4, 8}}, Ring::integers(), 2), UnionIncomplete);

  Rng rng(74);
  for (int trial = 0; trial < 15; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    CHECK(continuity_verify(g, random_filtration(*g, rng), batch_rings()[static_cast<size_t>(trial) % 6], 2).passed);
  }
}

TEST_CASE("seeded suites pass and are reproducible") {
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    SuiteOptions opts;
    opts.seed = 5;
    opts.count = 12;
    const SuiteResult a = run_suite(name, opts);
    CHECK(a.outcomes.size() == 12);
    CHECK(a.all_pass());
    const SuiteResult b = run_suite(name, opts);
    CHECK(suite_to_json(a, true) == suite_to_json(b, true));
    opts.seed = 6;
    CHECK(run_suite(name, opts).outcomes[0].seed != a.outcomes[0].seed);
  }
  CHECK_THROWS_AS(run_suite("tautology", {}), Malformed);
}
