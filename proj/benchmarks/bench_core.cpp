#include <benchmark/benchmark.h>

#include "geomlab/analysis.hpp"
#include "geomlab/zoo.hpp"

using namespace geomlab;

namespace {

Vector interior_point(const MetricSpec& spec, double t) {
  return boundary_rays(spec).front().at(t);
}

void BM_metric_at(benchmark::State& state) {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", static_cast<int>(state.range(0)));
  Vector x = interior_point(spec, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(metric_at(spec, x));
}
BENCHMARK(BM_metric_at)->Arg(2)->Arg(3)->Arg(4);

void BM_levi_civita(benchmark::State& state) {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", static_cast<int>(state.range(0)));
  Vector x = interior_point(spec, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(levi_civita(spec, x));
}
BENCHMARK(BM_levi_civita)->Arg(2)->Arg(3)->Arg(4);

void BM_curvature(benchmark::State& state) {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", static_cast<int>(state.range(0)));
  Vector x = interior_point(spec, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(curvature(spec, x));
}
BENCHMARK(BM_curvature)->Arg(2)->Arg(3)->Arg(4);

void BM_extension_test(benchmark::State& state) {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 3);
  auto rays = boundary_rays(spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_projective_extension(spec, rays));
}
BENCHMARK(BM_extension_test)->Unit(benchmark::kMillisecond);

void BM_full_report(benchmark::State& state) {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 3);
  auto adapted = zoo::adapted("klein_hyperbolic", 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(full_report(spec, adapted ? &*adapted : nullptr));
}
BENCHMARK(BM_full_report)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
