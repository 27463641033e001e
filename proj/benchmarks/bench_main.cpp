#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "ftdft/corpus.hpp"
#include "ftdft/dft_engine.hpp"
#include "ftdft/harness.hpp"
#include "ftdft/interp.hpp"
#include "ftdft/weights.hpp"

using namespace ftdft;

namespace {

SampledVector random_vector(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return SampledVector(std::move(v));
}

void BM_DftUnitary(benchmark::State& state) {
  const auto x = random_vector(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft_unitary(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftUnitary)->RangeMultiplier(4)->Range(64, 1 << 18)->Complexity(benchmark::oNLogN);

// Sampling both sides, one FFT and the difference norm.
void BM_ErrorL2(benchmark::State& state) {
  const auto fp = corpus_get("fab:3,3");
  const auto plan = plan_for(fp, {}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(error_l2(fp, plan).e_l2);
}
BENCHMARK(BM_ErrorL2)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_InterpEval(benchmark::State& state) {
  const auto fp = corpus_get("fab:2,2");
  const auto plan = plan_for(fp, {}, 4096);
  const auto kernel = static_cast<Kernel>(state.range(0));
  const auto itp = Interpolant::from_dft(fp, plan, kernel);
  double xi = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(interp_eval(itp, xi));
    xi = xi > 3.0 ? -3.0 : xi + 1e-3;
  }
  state.SetLabel(kernel_name(kernel));
}
BENCHMARK(BM_InterpEval)->DenseRange(0, 2);

void BM_Phi(benchmark::State& state) {
  const WeightSpec w = state.range(0) == 0 ? WeightSpec::polynomial(1.5)
                                           : WeightSpec::sub_exponential(0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(phi(w, 8.0));
  state.SetLabel(w.describe());
}
BENCHMARK(BM_Phi)->DenseRange(0, 1);

}  // namespace

BENCHMARK_MAIN();
