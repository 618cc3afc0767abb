#include <benchmark/benchmark.h>

#include "paramarkov/limits.hpp"
#include "paramarkov/operators.hpp"
#include "paramarkov/processes.hpp"
#include "paramarkov/sampling.hpp"
#include "paramarkov/specfun.hpp"

using namespace paramarkov;

static void BM_MittagLefflerSeries(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mittag_leffler_neg(0.7, x));
    x = (x < 4.5) ? x + 0.1 : 0.1;
  }
}
BENCHMARK(BM_MittagLefflerSeries);

static void BM_MittagLefflerQuadrature(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(mittag_leffler_neg(0.5, 25.0));
}
BENCHMARK(BM_MittagLefflerQuadrature);

static void BM_LampertiSampler(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_lamperti(0.6, 1.0, rng));
}
BENCHMARK(BM_LampertiSampler);

static void BM_PoissonCountLargeMean(benchmark::State& state) {
  RngStream rng(1, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_poisson(1e9, rng));
}
BENCHMARK(BM_PoissonCountLargeMean);

static void BM_ParaTransitionMatrix(benchmark::State& state) {
  Matrix p(2, 2);
  p(0, 1) = 1.0;
  p(1, 0) = 1.0;
  const TransitionMatrix tp(p);
  const SurvivalSpec spec{LampertiMixing{0.5, 1.0}, {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(para_transition_matrix(tp, spec, 1.0));
}
BENCHMARK(BM_ParaTransitionMatrix);

static void BM_CtrwPath(benchmark::State& state) {
  const SurvivalSpec spec{LampertiMixing{0.5, 1.0}, {}};
  const TimeGrid grid{{0.5, 1.0}};
  RngStream rng(1, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        simulate_ctrw(JumpLaw::Rademacher, spec, 1000.0, grid, rng));
}
BENCHMARK(BM_CtrwPath);

static void BM_GlCaputoSweep(benchmark::State& state) {
  const auto f = GridFunction::tabulate(
      1e-3, 2000, [](double t) { return ml_survival({0.5, 1.0}, t); });
  for (auto _ : state) benchmark::DoNotOptimize(gl_caputo(0.5, f, 2.0));
}
BENCHMARK(BM_GlCaputoSweep);

BENCHMARK_MAIN();
