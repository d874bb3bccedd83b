#include <benchmark/benchmark.h>

#include "rumor/generators.hpp"
#include "rumor/spectral.hpp"

namespace {

void BM_Regular(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto g = rumor::near_regular(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)),
                                 seed++, false);
    benchmark::DoNotOptimize(g.edge_count());
  }
}

void BM_Gnp(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rumor::gnp_graph(static_cast<std::size_t>(state.range(0)), 0.05, seed++));
}

void BM_PushAdversary(benchmark::State& state) {
  rumor::FamilySpec spec;
  spec.family = rumor::Family::push_adversary;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.eps = 0.3;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rumor::generate(spec, seed++).edge_count());
}

void BM_SpectralExact(benchmark::State& state) {
  const auto g = rumor::gnp_graph(static_cast<std::size_t>(state.range(0)), 0.1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(rumor::spectral_profile(g).lambda);
}

void BM_SpectralPower(benchmark::State& state) {
  const auto g = rumor::near_regular(static_cast<std::size_t>(state.range(0)), 16, 5, false);
  for (auto _ : state) benchmark::DoNotOptimize(rumor::spectral_profile(g, 0).lambda);
}

}  // namespace

BENCHMARK(BM_Regular)->Args({1 << 12, 16})->Args({1 << 14, 128})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gnp)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PushAdversary)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralExact)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralPower)->Arg(1 << 13)->Unit(benchmark::kMillisecond);
