#include <benchmark/benchmark.h>

#include <cmath>

#include "morlab/bvp.hpp"
#include "morlab/lorentz.hpp"
#include "morlab/maximal.hpp"
#include "morlab/morrey.hpp"
#include "morlab/potential.hpp"
#include "morlab/spectral.hpp"

using namespace morlab;

namespace {

SampledFunction gauss(const GridSpec& g, double amp, double s) {
  return sample([=](const Point& x) { return amp * std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2 * s * s)); }, g);
}

void BM_LorentzQuasinorm(benchmark::State& state) {
  const GridSpec g = make_grid(2, 1.0, int(state.range(0)), false);
  const SampledFunction f = gauss(g, 1.0, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_quasinorm(f, {2.0, 3.0}));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_LorentzQuasinorm)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void BM_MorreyLorentzNorm(benchmark::State& state) {
  const GridSpec g = make_grid(2, 1.0, int(state.range(0)), false);
  const SampledFunction f = gauss(g, 1.0, 0.3);
  const CubeFamily fam = enumerate_all_scales(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(morrey_lorentz_norm(f, {2.0, 2.0, 3.0}, fam).value);
}
BENCHMARK(BM_MorreyLorentzNorm)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FractionalMaximal(benchmark::State& state) {
  const GridSpec g = make_grid(2, 1.0, int(state.range(0)), false);
  const SampledFunction f = gauss(g, 1.0, 0.3);
  const CubeFamily fam = enumerate_all_scales(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_maximal(f, 0.5, fam));
}
BENCHMARK(BM_FractionalMaximal)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RieszPotential(benchmark::State& state) {
  const GridSpec g = make_grid(2, 1.0, int(state.range(0)), false);
  const SampledFunction f = gauss(g, 1.0, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(riesz_potential(f, 1.0));
}
BENCHMARK(BM_RieszPotential)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SpectralLayer(benchmark::State& state) {
  const GridSpec g = make_grid(2, 0.5, int(state.range(0)), true);
  const SampledFunction f = subtract_mean(gauss(g, 1.0, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(single_layer_D(f, {0.05, 0.1, 0.2}).materialize(2));
}
BENCHMARK(BM_SpectralLayer)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_PicardSolve(benchmark::State& state) {
  const GridSpec g = make_grid(2, 4.0, 32, false);
  const auto model = make_layer(LayerKind::free_space, g);
  const BVProblem pb = make_problem(3.0, 3.5, gauss(g, 0.05, 0.5), gauss(g, 0.3, 0.7), gauss(g, 1.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(pb, *model).state.iterations);
}
BENCHMARK(BM_PicardSolve)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
