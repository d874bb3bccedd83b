#include <benchmark/benchmark.h>

#include "rumor/generators.hpp"
#include "rumor/protocol.hpp"

namespace {

void run_complete(benchmark::State& state, rumor::Protocol protocol) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const rumor::Graph g = rumor::Graph::complete(n);
  rumor::ProtocolConfig cfg;
  cfg.protocol = protocol;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto r = rumor::simulate(g, cfg, seed++);
    benchmark::DoNotOptimize(r.rounds);
  }
  state.SetComplexityN(state.range(0));
}

void BM_PushComplete(benchmark::State& s) { run_complete(s, rumor::Protocol::push); }
void BM_PullComplete(benchmark::State& s) { run_complete(s, rumor::Protocol::pull); }
void BM_PushPullComplete(benchmark::State& s) { run_complete(s, rumor::Protocol::push_pull); }

void BM_PullRegular(benchmark::State& state) {
  rumor::FamilySpec spec;
  spec.family = rumor::Family::regular;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.d = 32;
  const rumor::Graph g = rumor::generate(spec, 1);
  rumor::ProtocolConfig cfg;
  cfg.protocol = rumor::Protocol::pull;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rumor::simulate(g, cfg, seed++).rounds);
}

}  // namespace

BENCHMARK(BM_PushComplete)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();
BENCHMARK(BM_PullComplete)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();
BENCHMARK(BM_PushPullComplete)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();
BENCHMARK(BM_PullRegular)->Arg(1 << 12)->Arg(1 << 14);
