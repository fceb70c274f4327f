#include <benchmark/benchmark.h>

#include "gwb/bar_complex.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/homology.hpp"
#include "gwb/random.hpp"
#include "gwb/steinberg.hpp"

using namespace gwb;

namespace {

GroupoidPtr bench_groupoid() { return transitive_groupoid(2, symmetric_group_3()); }

void BM_BarComplex(benchmark::State& state) {
  const GModule m = trivial_module(bench_groupoid(), Ring::integers());
  BarOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(bar_complex(m, 3, opts));
}
BENCHMARK(BM_BarComplex)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

AlgebraElement dense_element(const GroupoidPtr& g, Rng& rng) {
  AlgebraElement f(g, Ring::integers());
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (size_t a = 0; a < g->num_arrows(); ++a) f.set(static_cast<ArrowId>(a), Rational(coeff(rng)));
  return f;
}

void BM_Convolve(benchmark::State& state) {
  const GroupoidPtr g = pair_groupoid(static_cast<size_t>(state.range(1)));
  Rng rng(7);
  const AlgebraElement f = dense_element(g, rng), h = dense_element(g, rng);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(parallel ? convolve(f, h) : convolve_serial(f, h));
}
BENCHMARK(BM_Convolve)->ArgsProduct({{0, 1}, {8, 24}})->ArgNames({"parallel", "units"})->Unit(benchmark::kMillisecond);

void BM_HomologyBatch(benchmark::State& state) {
  Rng rng(11);
  std::vector<GModule> modules;
  for (int i = 0; i < 16; ++i) {
    const GroupoidPtr g = random_groupoid(rng);
    modules.push_back(random_module(g, Ring::integers(), rng, 2));
  }
  const bool parallel = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? homology_batch(modules, 2) : homology_batch_serial(modules, 2));
}
BENCHMARK(BM_HomologyBatch)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
