#include <benchmark/benchmark.h>

#include "lpmlens/entropy_projection.hpp"
#include "lpmlens/log_stats.hpp"
#include "lpmlens/lpm_discovery.hpp"
#include "lpmlens/lpm_score.hpp"
#include "lpmlens/markov_projection.hpp"
#include "lpmlens/mrig_projection.hpp"
#include "synthetic_logs.hpp"

namespace {

using namespace lpmlens;

const EventLog& planted() {
  static const EventLog log = testing::planted_pattern_log();
  return log;
}

void BM_ScoreTree(benchmark::State& state) {
  ActivityTable t = planted().activities();
  const auto tree = parse_tree("and(a,b,c,d)", t);
  const LpmEvaluator evaluator(planted(), {});
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.score(tree));
}
BENCHMARK(BM_ScoreTree);

void BM_ConnectednessMatrix(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(connectedness_matrix(planted()));
}
BENCHMARK(BM_ConnectednessMatrix);

void BM_MarkovProjections(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(discover_markov_projections(planted()));
}
BENCHMARK(BM_MarkovProjections);

void BM_EntropyProjections(benchmark::State& state) {
  const double ratio = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(discover_entropy_projections(planted(), ratio));
}
BENCHMARK(BM_EntropyProjections)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MrigProjections(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(discover_mrig_projections(planted(), 0.1));
}
BENCHMARK(BM_MrigProjections)->Unit(benchmark::kMillisecond);

void BM_Discovery(benchmark::State& state) {
  DiscoveryParams p;
  p.max_activities = static_cast<std::size_t>(state.range(0));
  p.support_prune = 0.6;
  for (auto _ : state) benchmark::DoNotOptimize(discover(planted(), p));
}
BENCHMARK(BM_Discovery)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
