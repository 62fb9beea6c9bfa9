#include <benchmark/benchmark.h>

#include "ochoice/generate.hpp"
#include "ochoice/identify.hpp"
#include "ochoice/polytope.hpp"

using namespace ochoice;

namespace {

Instance bench_instance(size_t menus, size_t max_size) {
  ShapeSpec shape;
  shape.menus = menus;
  shape.alts = 10;
  shape.min_size = 2;
  shape.max_size = max_size;
  shape.den_max = 12;
  return gen_random(shape, 12345, GenMode::Arbitrary).instance;
}

void BM_identify_min(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<size_t>(state.range(0)), 4);
  for (auto _ : state) {
    TypeDistribution pi = identify_min(inst);
    benchmark::DoNotOptimize(pi.support_size());
  }
}
BENCHMARK(BM_identify_min)->Arg(3)->Arg(6)->Arg(10);

void BM_identify_generic_M(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<size_t>(state.range(0)), 3);
  for (auto _ : state) {
    IdentificationResult res = identify(CopulaSpec::min_copula(), inst);
    benchmark::DoNotOptimize(res.stats.types_enumerated);
  }
}
BENCHMARK(BM_identify_generic_M)->Arg(3)->Arg(5)->Arg(7);

void BM_identify_generic_W(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<size_t>(state.range(0)), 3);
  for (auto _ : state) {
    IdentificationResult res = identify(CopulaSpec::fh_lower(), inst);
    benchmark::DoNotOptimize(res.stats.types_enumerated);
  }
}
BENCHMARK(BM_identify_generic_W)->Arg(3)->Arg(5)->Arg(7);

void BM_extremal_lp(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<size_t>(state.range(0)), 3);
  PolytopeSpec poly = build_polytope(inst);
  ChoiceType target = inst.best_type();
  for (auto _ : state) {
    ExtremalResult res = extremal_mass(poly, target, TargetSet::DownSet, LpSense::Max);
    benchmark::DoNotOptimize(res.optimum);
  }
}
BENCHMARK(BM_extremal_lp)->Arg(3)->Arg(4);

void BM_vertex_enumeration(benchmark::State& state) {
  Instance inst = bench_instance(2, 3); // |S| <= 9
  for (auto _ : state) {
    auto vertices = enumerate_representations(inst);
    benchmark::DoNotOptimize(vertices.size());
  }
}
BENCHMARK(BM_vertex_enumeration);

} // namespace

BENCHMARK_MAIN();
