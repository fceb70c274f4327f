#include <functional>

#include "doctest.h"

#include "gwb/bratteli.hpp"
#include "gwb/errors.hpp"
#include "gwb/random.hpp"

using namespace gwb;

namespace {

using Edges = std::vector<std::vector<std::vector<int64_t>>>;

BratteliDiagram random_diagram(Rng& rng, size_t depth, size_t max_width = 3, int64_t max_mult = 2) {
  std::uniform_int_distribution<size_t> width(1, max_width);
  std::uniform_int_distribution<int64_t> mult(0, max_mult);
  std::vector<size_t> v{1};
  Edges e;
  for (size_t k = 0; k < depth; ++k) {
    const size_t w = width(rng);
    std::vector<std::vector<int64_t>> m(v.back(), std::vector<int64_t>(w));
    for (auto& row : m)
      for (auto& x : row) x = mult(rng);
    for (size_t c = 0; c < w; ++c) m[rng() % v.back()][c] += 1;
    v.push_back(w);
    e.push_back(m);
  }
  return make_bratteli(v, e);
}

// Enumerates every root path edge by edge.
std::vector<std::vector<size_t>> brute_path_counts(const BratteliDiagram& b, size_t n) {
  std::vector<std::vector<size_t>> out;
  for (size_t level = 0; level <= n; ++level) {
    std::vector<size_t> count(b.vertices[level]);
    std::function<void(size_t, size_t)> walk = [&](size_t k, size_t vertex) {
      if (k == level) {
        ++count[vertex];
        return;
      }
      for (size_t w = 0; w < b.vertices[k + 1]; ++w)
        for (int64_t e = 0; e < b.edges[k][vertex][w]; ++e) walk(k + 1, w);
    };
    walk(0, 0);
    out.push_back(count);
  }
  return out;
}

}  // namespace

TEST_CASE("path counts match enumeration") {
  Rng rng(81);
  for (int trial = 0; trial < 30; ++trial) {
    const BratteliDiagram b = random_diagram(rng, 4);
    CHECK(path_counts(b, 4) == brute_path_counts(b, 4));
  }
  CHECK(path_counts(car_diagram(4), 4).back() == std::vector<size_t>{16});
  // Fibonacci numbers per vertex.
  CHECK(path_counts(fibonacci_diagram(4), 4).back() == std::vector<size_t>{5, 3});
}

TEST_CASE("level groupoids are unions of pair groupoids on paths") {
  Rng rng(82);
  for (int trial = 0; trial < 20; ++trial) {
    const BratteliDiagram b = random_diagram(rng, 3, 2, 1);
    const auto counts = path_counts(b, 3);
    for (size_t n = 0; n <= 3; ++n) {
      const LevelGroupoid lg = level_groupoid(b, n);
      size_t units = 0, arrows = 0, nonempty = 0;
      for (size_t c : counts[n]) {
        units += c;
        arrows += c * c;
        nonempty += c > 0;
      }
      CHECK(lg.groupoid->num_units() == units);
      CHECK(lg.groupoid->num_arrows() == arrows);
      CHECK(is_principal(*lg.groupoid));
      CHECK(orbits(*lg.groupoid).classes.size() == nonempty);
      CHECK(lg.paths.size() == units);
      for (size_t x = 0; x < units; ++x) {
        CHECK(lg.paths[x].size() == n);
        if (n > 0) CHECK(lg.paths[x].back().vertex == lg.terminal[x]);
      }
    }
  }
  CHECK_THROWS_AS(level_groupoid(car_diagram(4), 5), DepthExceeded);
  CHECK_THROWS_AS(level_groupoid(car_diagram(4), 4, 10), ResourceLimit);
}

TEST_CASE("the H0 system is the transposed multiplicity matrices") {
  Rng rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const BratteliDiagram b = random_diagram(rng, 4);
    const InductiveSystem s = h0_system(b, 4);
    CHECK(s.groups == b.vertices);
    for (size_t k = 0; k < 4; ++k)
      for (size_t i = 0; i < b.vertices[k]; ++i)
        for (size_t j = 0; j < b.vertices[k + 1]; ++j) CHECK(s.maps[k](j, i) == Rational(b.edges[k][i][j]));
  }
  CHECK_THROWS_AS(h0_system(car_diagram(2), 3), DepthExceeded);
}

TEST_CASE("induced maps on H0 agree with the system at every level") {
  Rng rng(84);
  for (int trial = 0; trial < 10; ++trial) {
    const BratteliDiagram b = random_diagram(rng, 3, 2, 1);
    const InductiveSystem s = h0_system(b, 3);
    for (size_t n = 0; n < 3; ++n) {
      const LevelGroupoid from = level_groupoid(b, n);
      const LevelGroupoid to = level_groupoid(b, n + 1);
      const Matrix m = induced_h0(level_refinement(b, from, to), trivial_module(from.groupoid, Ring::integers()),
                                  trivial_module(to.groupoid, Ring::integers()));
      // Only vertices reached by a path carry an H0 class.
      const auto counts = path_counts(b, n + 1);
      std::vector<size_t> rows, cols;
      for (size_t j = 0; j < counts[n + 1].size(); ++j)
        if (counts[n + 1][j]) rows.push_back(j);
      for (size_t i = 0; i < counts[n].size(); ++i)
        if (counts[n][i]) cols.push_back(i);
      REQUIRE(m.rows() == rows.size());
      REQUIRE(m.cols() == cols.size());
      for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) CHECK(m(r, c) == s.maps[n](rows[r], cols[c]));
    }
  }
}

TEST_CASE("colimit labels") {
  const ColimitReport car = colimit_report(h0_system(car_diagram(4), 4));
  CHECK(car.stationary);
  CHECK(car.label == std::optional<std::string>("Z[1/2]"));
  CHECK(car.eventual_rank == 1);

  const ColimitReport fib = colimit_report(h0_system(fibonacci_diagram(4), 4));
  CHECK(fib.stationary);
  CHECK(fib.eventual_rank == 2);
  CHECK_FALSE(fib.label.has_value());

  const BratteliDiagram split = make_bratteli({1, 2, 2, 2}, {{{1, 1}}, {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}});
  CHECK(colimit_report(h0_system(split, 3)).label == std::optional<std::string>("Z^2"));

  const BratteliDiagram drift = make_bratteli({1, 1, 1, 1}, {{{2}}, {{2}}, {{3}}});
  CHECK_FALSE(colimit_report(h0_system(drift, 3)).stationary);
}

TEST_CASE("AF reports") {
  const AfHomologyReport car = af_homology_report(car_diagram(4), 4, 2);
  CHECK(car.verdict);
  CHECK(car.levels.size() == 5);
  for (const AfLevel& l : car.levels) {
    CHECK(l.principal);
    CHECK(l.certified);
    CHECK(l.positive_vanish);
    CHECK(l.map_matches);
  }
  const AfHomologyReport fib = af_homology_report(fibonacci_diagram(4), 4, 2);
  CHECK(fib.verdict);
  CHECK(fib.colimit.eventual_rank == 2);
}

TEST_CASE("diagram validation") {
  CHECK_THROWS_AS(make_bratteli({1, 2}, {{{1}}}), Malformed);
  CHECK_THROWS_AS(make_bratteli({2, 1}, {{{1}, {1}}}), Malformed);
  CHECK_THROWS_AS(make_bratteli({1, 1}, {{{-1}}}), Malformed);
  CHECK_THROWS_AS(make_bratteli({1, 2}, {{{1, 0}}}), SourceVertex);
  CHECK_THROWS_AS(parse_bratteli("{\"vertices\": [1, 1]"), Malformed);
  const BratteliDiagram b = parse_bratteli(R"({"vertices":[1,1,1],"edges":[[[2]],[[2]]]})");
  CHECK(b.depth() == 2);
  CHECK(b.edges[1][0][0] == 2);
}
