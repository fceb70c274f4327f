#include <map>

#include "doctest.h"

#include "gwb/certify.hpp"
#include "gwb/errors.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/random.hpp"
#include "gwb/steinberg.hpp"

using namespace gwb;

namespace {

AlgebraElement random_element(const GroupoidPtr& g, const Ring& ring, Rng& rng) {
  AlgebraElement f(g, ring);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (size_t a = 0; a < g->num_arrows(); ++a) f.set(static_cast<ArrowId>(a), ring.from_int(coeff(rng)));
  return f;
}

// Pair groupoid arrow r*k + s is the matrix unit e_{r,s}.
std::vector<std::vector<Rational>> as_matrix(const AlgebraElement& f, size_t k) {
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
  for (size_t r = 0; r < k; ++r)
    for (size_t s = 0; s < k; ++s) m[r][s] = f.at(static_cast<ArrowId>(r * k + s));
  return m;
}

std::vector<std::vector<Rational>> matmul(const std::vector<std::vector<Rational>>& a,
                                          const std::vector<std::vector<Rational>>& b) {
  const size_t k = a.size();
  std::vector<std::vector<Rational>> c(k, std::vector<Rational>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      for (size_t t = 0; t < k; ++t) c[i][j] = c[i][j] + a[i][t] * b[t][j];
  return c;
}

// Group ring product: (f h)(z) = Σ_{xy = z} f(x) h(y).
std::vector<Rational> group_ring_product(const FiniteGroup& h, const std::vector<Rational>& f,
                                         const std::vector<Rational>& k) {
  std::vector<Rational> out(h.order);
  for (size_t x = 0; x < h.order; ++x)
    for (size_t y = 0; y < h.order; ++y) {
      const size_t z = static_cast<size_t>(h.mul(static_cast<int>(x), static_cast<int>(y)));
      out[z] = out[z] + f[x] * k[y];
    }
  return out;
}

bool orders_are_units(const FiniteGroupoid& g, const Ring& ring) {
  for (size_t x = 0; x < g.num_units(); ++x) {
    int64_t loops = 0;
    for (size_t a = 0; a < g.num_arrows(); ++a)
      if (g.source(static_cast<ArrowId>(a)) == static_cast<UnitId>(x) &&
          g.range(static_cast<ArrowId>(a)) == static_cast<UnitId>(x))
        ++loops;
    if (!ring.is_unit(ring.from_int(loops))) return false;
  }
  return true;
}

const std::vector<Ring>& rings() {
  static const std::vector<Ring> r = {Ring::integers(),      Ring::rationals(),   Ring::prime_field(2),
                                      Ring::prime_field(3),  Ring::localized(2),  Ring::localized(6)};
  return r;
}

}  // namespace

TEST_CASE("convolution on pair groupoids is matrix multiplication") {
  Rng rng(41);
  for (size_t k = 1; k <= 4; ++k) {
    const GroupoidPtr p = pair_groupoid(k);
    for (int trial = 0; trial < 10; ++trial) {
      const AlgebraElement f = random_element(p, Ring::integers(), rng);
      const AlgebraElement h = random_element(p, Ring::integers(), rng);
      CHECK(as_matrix(convolve(f, h), k) == matmul(as_matrix(f, k), as_matrix(h, k)));
    }
  }
}

TEST_CASE("convolution on a group is the group ring product") {
  Rng rng(42);
  for (const FiniteGroup& grp : small_group_catalogue()) {
    const GroupoidPtr g = group_groupoid(grp);
    for (int trial = 0; trial < 5; ++trial) {
      const AlgebraElement f = random_element(g, Ring::integers(), rng);
      const AlgebraElement h = random_element(g, Ring::integers(), rng);
      CHECK(convolve(f, h).coefficients() == group_ring_product(grp, f.coefficients(), h.coefficients()));
    }
  }
}

TEST_CASE("convolution is associative, unital and thread-invariant") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const Ring& ring = rings()[static_cast<size_t>(trial) % rings().size()];
    const AlgebraElement a = random_element(g, ring, rng);
    const AlgebraElement b = random_element(g, ring, rng);
    const AlgebraElement c = random_element(g, ring, rng);
    CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
    CHECK(convolve(a, b) == convolve_serial(a, b));
    std::vector<ArrowId> units;
    for (size_t x = 0; x < g->num_units(); ++x) units.push_back(g->unit_arrow(static_cast<UnitId>(x)));
    const AlgebraElement one = indicator(g, ring, units);
    CHECK(convolve(one, a) == a);
    CHECK(convolve(a, one) == a);
  }
}

TEST_CASE("convolution rejects mixed operands") {
  const GroupoidPtr p = pair_groupoid(2);
  const GroupoidPtr q = pair_groupoid(2);
  CHECK_THROWS_AS(convolve(AlgebraElement(p, Ring::integers()), AlgebraElement(q, Ring::integers())),
                  AmbientMismatch);
  CHECK_THROWS_AS(convolve(AlgebraElement(p, Ring::integers()), AlgebraElement(p, Ring::rationals())),
                  RingMismatch);
}

TEST_CASE("pushforwards along source, range and faces") {
  const GroupoidPtr p = pair_groupoid(3);
  AlgebraElement f(p, Ring::integers());
  f.set(1, Rational(2));  // (0,1)
  f.set(5, Rational(7));  // (1,2)
  f.set(2, Rational(-1)); // (0,2)
  CHECK(pushforward_source(f).coeffs == std::vector<Rational>{Rational(0), Rational(2), Rational(6)});
  CHECK(pushforward_range(f).coeffs == std::vector<Rational>{Rational(1), Rational(7), Rational(0)});

  // δ on the composable pair ((0,1), (1,0)).
  TupleElement t{Ring::integers(), 2, {{{1, 3}, Rational(5)}}};
  const TupleElement d0 = pushforward_face(*p, 1, 0, t);
  const TupleElement d1 = pushforward_face(*p, 1, 1, t);
  CHECK(d0.coeffs == std::map<std::vector<ArrowId>, Rational>{{{3}, Rational(5)}});
  CHECK(d1.coeffs == std::map<std::vector<ArrowId>, Rational>{{{0}, Rational(5)}});
  TupleElement single{Ring::integers(), 1, {{{1}, Rational(4)}, {{7}, Rational(1)}}};
  CHECK(pushforward_face(*p, 0, 0, single).coeffs ==
        std::map<std::vector<ArrowId>, Rational>{{{1}, Rational(5)}});

  CHECK(NamedMap::parse("face:2:1").kind == NamedMap::Kind::Face);
  CHECK(NamedMap::parse("range").kind == NamedMap::Kind::Range);
  CHECK_THROWS_AS(NamedMap::parse("sideways"), UnknownMap);
}

TEST_CASE("the augmentation kernel spans ker s_* by dimension count") {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const auto k = augmentation_kernel(g, Ring::integers());
    CHECK(k.size() == g->num_arrows() - g->num_units());
    for (const AlgebraElement& v : k)
      for (const Rational& c : pushforward_source(v).coeffs) CHECK(c.is_zero());
  }
}

TEST_CASE("kernel generation certificates replay for random covers") {
  Rng rng(45);
  for (int trial = 0; trial < 25; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const Ring& ring = rings()[static_cast<size_t>(trial) % rings().size()];
    const auto cover = random_bisection_cover(*g, rng);
    KernelGenerationResult r = kernel_generation_check(g, ring, cover);
    CHECK(r.generated);
    CHECK_FALSE(r.missing.has_value());
    CHECK(r.kernel_arrows.size() == g->num_arrows() - g->num_units());
    CHECK(verify_kernel_generation(g, ring, r));
    if (!r.ideal_in_kernel.empty() && !r.ideal_in_kernel[0].kernel_coords.empty()) {
      Rational& c = r.ideal_in_kernel[0].kernel_coords[0];
      c = ring.add(c, ring.from_int(1));
      CHECK_FALSE(verify_kernel_generation(g, ring, r));
    }
  }
  CHECK_THROWS_AS(kernel_generation_check(pair_groupoid(3), Ring::integers(), {{1}}), CoverFailure);
}

TEST_CASE("full idempotents decompose the identity") {
  const GroupoidPtr p = pair_groupoid(3);
  const FullnessDecomposition d = fullness_idempotent(p, {0}, Ring::integers());
  CHECK(d.verified);
  CHECK(d.sum == indicator(p, Ring::integers(), {0, 4, 8}));
  CHECK(d.total_terms == (size_t{1} << d.bisections.size()) - 1);

  const GroupoidPtr two = disjoint_union({pair_groupoid(2), group_groupoid(cyclic_group(2))});
  CHECK_THROWS_AS(fullness_idempotent(two, {0}, Ring::integers()), NotFull);
  CHECK_THROWS_AS(fullness_idempotent(two, {9}, Ring::integers()), UnknownUnit);

  Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const auto y = transversal(*g);
    const FullnessDecomposition r = fullness_idempotent(g, std::vector<int64_t>(y.begin(), y.end()), Ring::integers());
    CHECK(r.verified);
  }
}

TEST_CASE("averaging idempotents exist exactly when the order is invertible") {
  const GroupoidPtr c2 = group_groupoid(cyclic_group(2));
  const AveragingResult q = averaging_idempotent(c2, Ring::rationals());
  CHECK(q.idempotent);
  CHECK(q.absorbs_group);
  CHECK(q.augmentation_one);
  CHECK(q.e.at(0) == Rational(1, 2));
  CHECK(q.e.at(1) == Rational(1, 2));
  CHECK(group_ring_product(cyclic_group(2), q.e.coefficients(), q.e.coefficients()) == q.e.coefficients());
  CHECK(averaging_idempotent(c2, Ring::prime_field(3)).idempotent);
  CHECK_THROWS_AS(averaging_idempotent(c2, Ring::integers()), OrderNotInvertible);
  CHECK_THROWS_AS(averaging_idempotent(c2, Ring::prime_field(2)), OrderNotInvertible);
  CHECK_THROWS_AS(averaging_idempotent(pair_groupoid(2), Ring::rationals()), NotGroupBundle);
}

TEST_CASE("split_source succeeds iff every isotropy order is a unit") {
  Rng rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    const Ring& ring = rings()[static_cast<size_t>(trial) % rings().size()];
    const SplitResult s = split_source(g, ring);
    const bool expected = orders_are_units(*g, ring);
    CHECK(s.split == expected);
    CHECK(isotropy_orders_invertible(*g, ring) == expected);
    if (s.split) {
      REQUIRE(s.f.has_value());
      CHECK(verify_splitting(g, ring, *s.f));
      UnitSpaceElement phi{ring, {}};
      for (size_t x = 0; x < g->num_units(); ++x) phi.coeffs.push_back(ring.from_int(static_cast<int64_t>(x) - 1));
      CHECK(pushforward_source(splitting_map(*s.f, phi)) == phi);
    } else {
      CHECK(s.obstruction_unit >= 0);
      CHECK_FALSE(ring.is_unit(ring.from_int(static_cast<int64_t>(s.obstruction_order))));
    }
  }
}

TEST_CASE("uniform bound is the largest range fiber") {
  Rng rng(48);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidPtr g = random_groupoid(rng);
    std::vector<size_t> fiber(g->num_units());
    for (size_t a = 0; a < g->num_arrows(); ++a) ++fiber[static_cast<size_t>(g->range(static_cast<ArrowId>(a)))];
    CHECK(uniform_bound(*g) == *std::max_element(fiber.begin(), fiber.end()));
  }
  CHECK(uniform_bound(*pair_groupoid(4)) == 4);
}
