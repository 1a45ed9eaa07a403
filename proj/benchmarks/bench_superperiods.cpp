#include <benchmark/benchmark.h>

#include "superperiods/pipeline.hpp"

using namespace superperiods;

namespace {

std::vector<ExactComplex> int_poly(std::initializer_list<long> c) {
  std::vector<ExactComplex> out;
  for (long v : c) out.push_back({v, 0});
  return out;
}

// One edge of y^m = x^4 + 3x^3 - x + 2, all moments, at state.range(0) bits.
// Gauss-Chebyshev only handles m = 2.
void BM_EdgeIntegration(benchmark::State& state, SchemeKind scheme) {
  long bits = state.range(0);
  int m = scheme == SchemeKind::GaussChebyshev ? 2 : 3;
  Curve c = Curve::from_exact(m, int_poly({2, -1, 0, 3, 1}), bits + 64);
  SpanningTree tree = spanning_tree(c, M_PI / 2);
  EdgeFrame f = edge_frame(c, tree.edges[0].a, tree.edges[0].b);
  std::vector<int> lmax = moment_orders(m, c.basis());
  QuadOptions o;
  o.prec = bits + 32;
  o.d_nats = bits * std::log(2.0) + std::log(4.0);
  o.scheme = scheme;
  long points = 0;
  for (auto _ : state) {
    EdgeMoments em = integrate_edge(f, lmax, o);
    points = em.report.points;
    benchmark::DoNotOptimize(em);
  }
  state.counters["nodes"] = static_cast<double>(points);
}
BENCHMARK_CAPTURE(BM_EdgeIntegration, de, SchemeKind::DoubleExponential)->RangeMultiplier(4)->Range(128, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EdgeIntegration, gc, SchemeKind::GaussChebyshev)->RangeMultiplier(4)->Range(128, 2048)->Unit(benchmark::kMillisecond);

// Full period matrix for y^m = x^n - x + 1.
void BM_PeriodPipeline(benchmark::State& state) {
  int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  std::vector<ExactComplex> f(n + 1, ExactComplex{0, 0});
  f[0] = {1, 0};
  f[1] = {-1, 0};
  f[n] = {1, 0};
  PipelineOptions opt;
  opt.target_bits = 128;
  for (auto _ : state) benchmark::DoNotOptimize(compute_periods_retry(m, f, opt));
}
BENCHMARK(BM_PeriodPipeline)->Args({2, 5})->Args({3, 4})->Args({2, 9})->Args({5, 6})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
