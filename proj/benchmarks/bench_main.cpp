#include <benchmark/benchmark.h>

#include "jfrac/frac_integral.hpp"
#include "jfrac/jacobi_expansion.hpp"
#include "jfrac/poisson_kernel.hpp"
#include "jfrac/random.hpp"
#include "jfrac/symmetric_spaces.hpp"
#include "jfrac/weighted_inequalities.hpp"

using namespace jfrac;

static void BM_GaussJacobiRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi_rule(n, 0.5, 1.5));
  state.SetComplexityN(n);
}
BENCHMARK(BM_GaussJacobiRule)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_TrigJacobiFill(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TrigJacobiBasis basis({0.5, 1.5}, n);
  std::vector<double> out(n + 1);
  double t = 0.1;
  for (auto _ : state) {
    basis.fill(t, out.data());
    benchmark::DoNotOptimize(out.data());
    t = t < 3.0 ? t + 0.01 : 0.1;
  }
}
BENCHMARK(BM_TrigJacobiFill)->Arg(16)->Arg(128)->Arg(1024);

static void BM_PoissonSeries(benchmark::State& state) {
  const double t = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(poisson_series(t, 0.3, 2.8, {3.0, 3.0}));
}
BENCHMARK(BM_PoissonSeries)->Arg(10)->Arg(100);

static void BM_PoissonClosedForm(benchmark::State& state) {
  const PoissonClosedForm closed({0.5, 1.5});
  closed(0.5, 1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(closed(0.5, 1.0, 2.0));
}
BENCHMARK(BM_PoissonClosedForm);

static void BM_FracKernelBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(FracKernel(FracParams(0.5, {0.5, 1.5})));
}
BENCHMARK(BM_FracKernelBuild)->Unit(benchmark::kMillisecond);

static void BM_FracKernelEval(benchmark::State& state) {
  const FracKernel k(FracParams(0.5, {0.5, 1.5}));
  const double gap = state.range(0) == 0 ? 1.2 : 1e-6;
  for (auto _ : state) benchmark::DoNotOptimize(k(1.0, 1.0 + gap));
}
BENCHMARK(BM_FracKernelEval)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ApConstant(benchmark::State& state) {
  const IntervalFamily fam = IntervalFamily::standard(1000, 40, 1);
  const Weight w = Weight::power(0.5, -0.3);
  for (auto _ : state) benchmark::DoNotOptimize(ap_constant_estimate(w, 2.0, fam));
}
BENCHMARK(BM_ApConstant)->Unit(benchmark::kMillisecond);

static void BM_SphereRatio(benchmark::State& state) {
  SplitMix64 rng(1);
  const SphereFunction sf = SphereFunction::random(2, 16, 16, rng);
  MixedNormParams mnp;
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_ratio(sf, mnp));
}
BENCHMARK(BM_SphereRatio)->Unit(benchmark::kMicrosecond);

static void BM_BallRatio(benchmark::State& state) {
  SplitMix64 rng(1);
  const BallFunction bf = BallFunction::random(2, 0, 16, 16, rng);
  MixedNormParams mnp;
  mnp.space = SpaceTag::ball;
  for (auto _ : state) benchmark::DoNotOptimize(theorem2_ratio(bf, mnp));
}
BENCHMARK(BM_BallRatio)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
