#include "doctest.h"

#include "gwb/bar_complex.hpp"
#include "gwb/errors.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/homology.hpp"
#include "gwb/random.hpp"
#include "oracles.hpp"

using namespace gwb;

namespace {

ModuleInvariants from_oracle(const oracle::Homology& h) {
  ModuleInvariants inv;
  inv.free_rank = h.free_rank;
  for (const auto& t : h.torsion) inv.torsion.push_back(Rational(static_cast<int64_t>(t)));
  return inv;
}

// Character module: fiber R, element a acting by chi[a].
GModule character_module(const FiniteGroup& h, const std::vector<int>& chi, const Ring& ring) {
  const GroupoidPtr g = group_groupoid(h);
  ModuleSpec spec;
  spec.fibers.push_back({0, 1, Matrix(1, 0)});
  for (size_t a = 1; a < h.order; ++a)
    spec.actions.push_back({static_cast<int64_t>(a), Matrix::from_rows({{Rational(chi[a])}})});
  return validate_gmodule(g, ring, spec);
}

std::vector<int> parity_sign(const FiniteGroup& h) {
  // In S3 and in C_{2k} with additive elements, the odd elements are exactly
  // those outside the index-two subgroup generated by squares.
  std::vector<bool> square(h.order, false);
  for (size_t a = 0; a < h.order; ++a) square[static_cast<size_t>(h.mul(static_cast<int>(a), static_cast<int>(a)))] = true;
  std::vector<bool> even(h.order, false);
  for (size_t a = 0; a < h.order; ++a)
    for (size_t b = 0; b < h.order; ++b)
      if (square[a] && square[b]) even[static_cast<size_t>(h.mul(static_cast<int>(a), static_cast<int>(b)))] = true;
  std::vector<int> chi;
  for (size_t a = 0; a < h.order; ++a) chi.push_back(even[a] ? 1 : -1);
  return chi;
}

std::vector<ModuleInvariants> invariants(const HomologyReport& r) { return r.degrees; }

size_t count_divisible(const ModuleInvariants& inv, int64_t p) {
  size_t k = 0;
  for (const Rational& t : inv.torsion)
    if (Ring::integers().divides(Rational(p), t)) ++k;
  return k;
}

struct Case {
  FiniteGroup group;
  oracle::Group oracle_group;
  bool sign;
  size_t top;
};

std::vector<Case> group_cases() {
  return {
      {cyclic_group(2), oracle::cyclic(2), false, 3},  {cyclic_group(2), oracle::cyclic(2, true), true, 3},
      {cyclic_group(3), oracle::cyclic(3), false, 3},  {cyclic_group(4), oracle::cyclic(4), false, 3},
      {cyclic_group(4), oracle::cyclic(4, true), true, 2}, {symmetric_group_3(), oracle::symmetric3(), false, 2},
      {symmetric_group_3(), oracle::symmetric3(true), true, 2},
  };
}

}  // namespace

TEST_CASE("group homology matches the explicit bar complex oracle over Z") {
  for (const Case& c : group_cases()) {
    CAPTURE(c.group.name);
    CAPTURE(c.sign);
    const std::vector<int> chi = c.sign ? parity_sign(c.group) : std::vector<int>(c.group.order, 1);
    const GModule m = character_module(c.group, chi, Ring::integers());
    const auto expected = oracle::group_homology_z(c.oracle_group, c.top);
    const HomologyReport r = homology(m, c.top);
    REQUIRE(r.degrees.size() == c.top + 1);
    for (size_t n = 0; n <= c.top; ++n) {
      CAPTURE(n);
      CHECK(r.degrees[n] == from_oracle(expected[n]));
    }
  }
}

TEST_CASE("group homology matches the oracle over prime fields") {
  for (const Case& c : group_cases()) {
    const std::vector<int> chi = c.sign ? parity_sign(c.group) : std::vector<int>(c.group.order, 1);
    for (int64_t p : {2, 3, 5}) {
      CAPTURE(c.group.name);
      CAPTURE(p);
      const GModule m = character_module(c.group, chi, Ring::prime_field(p));
      const auto expected = oracle::group_homology_fp(c.oracle_group, c.top, p);
      const HomologyReport r = homology(m, c.top);
      for (size_t n = 0; n <= c.top; ++n) {
        CHECK(r.degrees[n].torsion.empty());
        CHECK(r.degrees[n].free_rank == expected[n]);
      }
    }
  }
}

TEST_CASE("known values for the cyclic group of order two and S3") {
  const GModule c2 = trivial_module(group_groupoid(cyclic_group(2)), Ring::integers());
  const HomologyReport r = homology(c2, 3);
  CHECK(r.degrees[0] == ModuleInvariants{1, {}});
  CHECK(r.degrees[1] == ModuleInvariants{0, {Rational(2)}});
  CHECK(r.degrees[2] == ModuleInvariants{0, {}});
  CHECK(r.degrees[3] == ModuleInvariants{0, {Rational(2)}});

  const HomologyReport s3 = homology(trivial_module(group_groupoid(symmetric_group_3()), Ring::integers()), 3);
  CHECK(s3.degrees[1] == ModuleInvariants{0, {Rational(2)}});
  CHECK(s3.degrees[2].is_zero());
  CHECK(s3.degrees[3] == ModuleInvariants{0, {Rational(6)}});
}

TEST_CASE("pair groupoids and their unions are acyclic with one class per orbit") {
  const std::vector<GroupoidPtr> cases = {
      pair_groupoid(2), pair_groupoid(3), pair_groupoid(4),
      disjoint_union({pair_groupoid(2), pair_groupoid(3)}),
      disjoint_union({pair_groupoid(1), pair_groupoid(2), pair_groupoid(4)}),
  };
  const std::vector<size_t> orbit_counts = {1, 1, 1, 2, 3};
  for (size_t i = 0; i < cases.size(); ++i)
    for (const Ring& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)}) {
      const HomologyReport r = homology(trivial_module(cases[i], ring), 3);
      CHECK(r.degrees[0] == ModuleInvariants{orbit_counts[i], {}});
      for (size_t n = 1; n <= 3; ++n) CHECK(r.degrees[n].is_zero());
    }
}

TEST_CASE("chain ranks count nondegenerate tuples") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const HomologyReport r = homology(trivial_module(g, Ring::integers()), 2);
    REQUIRE(r.chain_ranks.size() == 4);
    for (size_t n = 0; n < 4; ++n) CHECK(r.chain_ranks[n] == count_composable(*g, n, true));
    HomologyOptions raw;
    raw.normalized = false;
    const HomologyReport u = homology(trivial_module(g, Ring::integers()), 2, raw);
    for (size_t n = 0; n < 4; ++n) CHECK(u.chain_ranks[n] == count_composable(*g, n));
  }
}

TEST_CASE("the bar complex squares to zero") {
  Rng rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const GModule m = random_module(g, Ring::integers(), rng, 2);
    for (bool normalized : {false, true}) {
      BarOptions opts;
      opts.normalized = normalized;
      const ChainComplex c = bar_complex(m, 3, opts);
      CHECK_FALSE(first_nonzero_square(c).has_value());
    }
  }
}

TEST_CASE("normalized and unnormalized complexes agree; batches are thread-invariant") {
  Rng rng(63);
  std::vector<GModule> batch;
  for (int trial = 0; trial < 24; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const Ring ring = trial % 2 ? Ring::integers() : Ring::prime_field(2);
    batch.push_back(random_module(g, ring, rng, 2));
  }
  HomologyOptions raw;
  raw.normalized = false;
  raw.check_square = true;
  for (const GModule& m : batch) CHECK(invariants(homology(m, 2)) == invariants(homology(m, 2, raw)));
  const auto par = homology_batch(batch, 2);
  const auto ser = homology_batch_serial(batch, 2);
  REQUIRE(par.size() == ser.size());
  for (size_t i = 0; i < par.size(); ++i) CHECK(par[i].degrees == ser[i].degrees);
}

TEST_CASE("universal coefficients and localization on random modules") {
  Rng rng(64);
  for (int trial = 0; trial < 30; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const GModule m = random_module(g, Ring::integers(), rng, 3);
    const auto z = homology(m, 3).degrees;
    for (int64_t p : {2, 3}) {
      const auto fp = homology(base_change(m, Ring::prime_field(p)), 3).degrees;
      for (size_t n = 0; n <= 3; ++n) {
        const size_t tor = n == 0 ? 0 : count_divisible(z[n - 1], p);
        CHECK(fp[n].free_rank == z[n].free_rank + count_divisible(z[n], p) + tor);
      }
    }
    for (int64_t k : {2, 6}) {
      const auto local = homology(base_change(m, Ring::localized(k)), 3).degrees;
      for (size_t n = 0; n <= 3; ++n) CHECK(local[n] == localize_invariants(z[n], k));
    }
    const auto q = homology(base_change(m, Ring::rationals()), 3).degrees;
    for (size_t n = 0; n <= 3; ++n) CHECK(q[n] == ModuleInvariants{z[n].free_rank, {}});
  }
}

TEST_CASE("fibers with relations") {
  // Trivial Z/2 coefficients on C2: by universal coefficients from
  // (Z, Z/2, 0, Z/2, 0) every degree is Z/2.
  const GroupoidPtr c2 = group_groupoid(cyclic_group(2));
  ModuleSpec spec;
  spec.fibers.push_back({0, 1, Matrix::from_rows({{Rational(2)}})});
  spec.actions.push_back({1, Matrix::identity(1)});
  const GModule m = validate_gmodule(c2, Ring::integers(), spec);
  CHECK_FALSE(m.is_free());
  const HomologyReport r = homology(m, 3);
  for (size_t n = 0; n <= 3; ++n) CHECK(r.degrees[n] == ModuleInvariants{0, {Rational(2)}});
}

TEST_CASE("tuple caps raise ResourceLimit") {
  HomologyOptions opts;
  opts.tuple_cap = 50;
  CHECK_THROWS_AS(homology(trivial_module(group_groupoid(symmetric_group_3()), Ring::integers()), 3, opts),
                  ResourceLimit);
}

TEST_CASE("H0 orbit coordinates and induced maps") {
  const GroupoidPtr g = disjoint_union({pair_groupoid(2), pair_groupoid(3)});
  const GModule m = trivial_module(g, Ring::integers());
  CHECK(h0_orbit_coordinates(m) == std::vector<size_t>{0, 0, 1, 1, 1});
  std::vector<ArrowId> units;
  for (size_t x = 0; x < g->num_units(); ++x) units.push_back(g->unit_arrow(static_cast<UnitId>(x)));
  const Subgroupoid h = subgroupoid(g, units);
  const Matrix map = induced_h0(h, trivial_module(h.groupoid, Ring::integers()), m);
  CHECK(map == Matrix::from_rows({{Rational(1), Rational(1), Rational(0), Rational(0), Rational(0)},
                                  {Rational(0), Rational(0), Rational(1), Rational(1), Rational(1)}}));
  const GModule sign = character_module(cyclic_group(2), {1, -1}, Ring::integers());
  CHECK_THROWS_AS(h0_orbit_coordinates(sign), IncompatibleModules);
}
