#include <benchmark/benchmark.h>

#include <vector>

#include "modspace/modspace.hpp"

using namespace modspace;

namespace {

std::vector<std::vector<double>> scaled_identity(std::size_t d, double s) {
  std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) a[i][i] = s;
  return a;
}

}  // namespace

static void BM_EvalPPower(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const ModularSpec m = ModularSpec::ppower(1.5);
  Sampler sampler(7);
  const Point x = sampler.point(dim);
  for (auto _ : state) benchmark::DoNotOptimize(eval(m, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvalPPower)->Arg(8)->Arg(64)->Arg(1024);

static void BM_EvalOrliczExp(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const ModularSpec m = ModularSpec::orlicz(Integrand::ExpMinusOne, dim);
  Sampler sampler(7);
  const Point x = sampler.point_at_scale(dim, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eval(m, x));
}
BENCHMARK(BM_EvalOrliczExp)->Arg(8)->Arg(64)->Arg(1024);

static void BM_FNorm(benchmark::State& state) {
  const ModularSpec m = ModularSpec::ppower(2.0);
  const Point x{3.0, -4.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(f_norm(m, x, 1e-10));
}
BENCHMARK(BM_FNorm);

static void BM_CheckAxioms(benchmark::State& state) {
  const ModularSpec m = ModularSpec::orlicz(Integrand::ULog, 4);
  for (auto _ : state) {
    Sampler sampler(11);
    benchmark::DoNotOptimize(check_modular_axioms(m, 4, sampler, 1000));
  }
}
BENCHMARK(BM_CheckAxioms);

static void BM_PicardAffine(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const MapSpec t = MapSpec::affine(scaled_identity(dim, 0.5), Point::filled(dim, 1.0));
  const ModularSpec m = ModularSpec::ppower(1.0);
  const Point x0 = Point::zeros(dim);
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(t, m, x0, 1e-10, 1000));
}
BENCHMARK(BM_PicardAffine)->Arg(2)->Arg(8)->Arg(32);

static void BM_BuildChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModularSpec m = ModularSpec::ppower(1.0);
  const MapSpec t = MapSpec::half();
  const Point omega{1.0};
  const double alpha = compute_alpha(m, t, omega, 0.5, n);
  for (auto _ : state) benchmark::DoNotOptimize(build_chain(m, t, omega, 0.5, alpha, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildChain)->Arg(30)->Arg(120)->Arg(480)->Complexity(benchmark::oNSquared);

BENCHMARK_MAIN();
