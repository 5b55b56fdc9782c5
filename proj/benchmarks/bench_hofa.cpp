#include <benchmark/benchmark.h>

#include <cmath>

#include "hofa/gowers.hpp"
#include "hofa/moments.hpp"
#include "hofa/random.hpp"

namespace {

hofa::GroupFunction phase_function(std::int64_t m) {
  const auto g = hofa::FiniteAbelianGroup::cyclic(m);
  return hofa::GroupFunction::from_fn(g, [m](std::size_t x) {
    const double t = static_cast<double>(x) / static_cast<double>(m);
    return 0.5 * hofa::unit_phase(3.0 * t * t) + 0.5 * hofa::unit_phase(7.0 * t);
  });
}

void BM_Fourier(benchmark::State& state) {
  const auto f = phase_function(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hofa::fourier_transform_fast(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fourier)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity();

void BM_GowersExact(benchmark::State& state) {
  const auto f = phase_function(state.range(0));
  const auto k = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(hofa::gowers_norm_exact(f, k));
}
BENCHMARK(BM_GowersExact)->Args({256, 2})->Args({1024, 2})->Args({64, 3})->Args({128, 3})->Args({16, 4});

void BM_GowersSampled(benchmark::State& state) {
  const auto f = phase_function(4096);
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hofa::gowers_norm_sampled(f, k, 100000, hofa::CounterRng(1)));
}
BENCHMARK(BM_GowersSampled)->Arg(2)->Arg(3)->Arg(4);

void BM_MomentExact(benchmark::State& state) {
  const auto f = phase_function(state.range(0));
  const auto spec = hofa::MomentSpec::triangle();
  for (auto _ : state) benchmark::DoNotOptimize(hofa::moment_exact(f, spec));
}
BENCHMARK(BM_MomentExact)->Arg(32)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
