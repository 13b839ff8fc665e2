#include <benchmark/benchmark.h>

#include "btlab/building.hpp"
#include "btlab/canon.hpp"
#include "btlab/field.hpp"
#include "btlab/geometry.hpp"
#include "btlab/germs.hpp"
#include "btlab/residue_ring.hpp"

using namespace btlab;

namespace {

FieldDescriptor field_for(int kind) {
  switch (kind) {
    case 0: return FieldDescriptor::mixed(2, 1, 1);
    case 1: return FieldDescriptor::mixed(2, 1, 2);
    default: return FieldDescriptor::equal_characteristic(2, 1);
  }
}

void BM_RingBuild(benchmark::State& state) {
  const auto desc = field_for(static_cast<int>(state.range(0)));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ResidueRing::build(desc, r));
}
BENCHMARK(BM_RingBuild)->ArgsProduct({{0, 1, 2}, {4, 8}})->Unit(benchmark::kMicrosecond);

void BM_RingIsomorphism(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto a = ResidueRing::build(FieldDescriptor::mixed(2, 1, 2), r);
  const auto b = ResidueRing::build(FieldDescriptor::equal_characteristic(2, 1), r);
  for (auto _ : state) benchmark::DoNotOptimize(rings_isomorphic(a, b));
}
BENCHMARK(BM_RingIsomorphism)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_BallBuild(benchmark::State& state) {
  const auto ring = ResidueRing::build(field_for(2), static_cast<int>(state.range(0)));
  const int d = static_cast<int>(state.range(1));
  std::size_t vertices = 0;
  for (auto _ : state) {
    const auto ball = build_ball(ring, d);
    vertices = ball.graph.size();
  }
  state.counters["vertices"] = static_cast<double>(vertices);
}
BENCHMARK(BM_BallBuild)->Args({1, 3})->Args({2, 3})->Args({3, 3})->Args({2, 4})->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state) {
  const auto g = build_ball(ResidueRing::build(field_for(0), static_cast<int>(state.range(0))), 3).graph;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
  state.counters["vertices"] = static_cast<double>(g.size());
}
BENCHMARK(BM_CanonicalForm)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_GeometryVerify(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto g = build_ball(ResidueRing::build(field_for(2), r), 3).graph;
  const auto scope = interior_scope(g, r);
  for (auto _ : state) benchmark::DoNotOptimize(verify_geometry(g, atilde_diagram(3), scope));
}
BENCHMARK(BM_GeometryVerify)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_GermPropagation(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto g = build_ball(ResidueRing::build(field_for(2), r), 3).graph;
  const auto domain = interior_scope(g, r, 1);
  GermLabeler labeler(g, atilde_diagram(3));
  const auto seed = labeler.germs_at(0).germs.front();
  for (auto _ : state) benchmark::DoNotOptimize(propagate(labeler, seed, &domain));
}
BENCHMARK(BM_GermPropagation)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
