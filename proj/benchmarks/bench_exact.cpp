#include <benchmark/benchmark.h>

#include <vector>

#include "rumor/exact_oracle.hpp"

namespace {

void BM_ExactRound(benchmark::State& state, rumor::Protocol protocol) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const rumor::Graph g = rumor::Graph::complete(n);
  const std::vector<rumor::Vertex> informed{0, 1};
  rumor::ProtocolConfig cfg;
  cfg.protocol = protocol;
  cfg.q = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(rumor::exact::exact_round_pmf(g, informed, cfg).mean());
}

void BM_ExactPush(benchmark::State& s) { BM_ExactRound(s, rumor::Protocol::push); }
void BM_ExactPull(benchmark::State& s) { BM_ExactRound(s, rumor::Protocol::pull); }
void BM_ExactPushPull(benchmark::State& s) { BM_ExactRound(s, rumor::Protocol::push_pull); }

void BM_SelfBoundingSweep(benchmark::State& state) {
  const std::vector<double> qs{0.5};
  for (auto _ : state)
    benchmark::DoNotOptimize(rumor::exact::self_bounding_sweep(static_cast<std::size_t>(state.range(0)), qs).cases);
}

}  // namespace

BENCHMARK(BM_ExactPush)->Arg(4)->Arg(5)->Arg(6);
BENCHMARK(BM_ExactPull)->Arg(4)->Arg(5)->Arg(6);
BENCHMARK(BM_ExactPushPull)->Arg(4)->Arg(5);
BENCHMARK(BM_SelfBoundingSweep)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
