// Microbenchmarks for the hot paths: ego-network extraction, the walk
// census, Monte-Carlo spreading and rank correlation.

#include <benchmark/benchmark.h>

#include "tempo/evaluation.hpp"
#include "tempo/rng.hpp"
#include "tempo/si.hpp"
#include "tempo/sweep.hpp"
#include "tempo/synthetic.hpp"
#include "tempo/walk_metrics.hpp"

namespace {

tempo::TemporalNetwork bench_network(int32_t nodes, int64_t contacts, int64_t horizon) {
  tempo::Rng rng = tempo::Rng::stream(7, tempo::stream_role::kSynthetic, 99);
  return tempo::random_temporal_network(nodes, contacts, horizon, rng);
}

void BM_ExtractPartial(benchmark::State& state) {
  const auto net = bench_network(200, 8000, 1000);
  const auto m = static_cast<int32_t>(state.range(0));
  int32_t root = 0;
  for (auto _ : state) {
    auto pnet = tempo::extract_partial(net, root, 0, 250, m);
    benchmark::DoNotOptimize(pnet.members.data());
    root = (root + 1) % net.n_nodes;
  }
}
BENCHMARK(BM_ExtractPartial)->Arg(1)->Arg(2)->Arg(3);

void BM_WalkCensus(benchmark::State& state) {
  const auto net = bench_network(200, 8000, 1000);
  const auto m = static_cast<int32_t>(state.range(0));
  const auto pnet = tempo::extract_partial(net, 0, 0, 250, m);
  for (auto _ : state) {
    auto census = tempo::walk_census(pnet);
    benchmark::DoNotOptimize(census.counts.size());
  }
}
BENCHMARK(BM_WalkCensus)->Arg(2)->Arg(3);

void BM_EarliestArrival(benchmark::State& state) {
  const auto net = bench_network(200, 8000, 1000);
  const auto pnet = tempo::extract_partial(net, 0, 0, 250, 3);
  for (auto _ : state) {
    auto ea = tempo::earliest_arrival(pnet);
    benchmark::DoNotOptimize(ea.arrival.data());
  }
}
BENCHMARK(BM_EarliestArrival);

void BM_InfluenceAll(benchmark::State& state) {
  const auto net = bench_network(100, 3000, 400);
  tempo::SiConfig cfg;
  cfg.beta = 0.1;
  cfg.t0 = 0;
  cfg.tau = 100;
  cfg.runs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto iv = tempo::influence_all(net, cfg);
    benchmark::DoNotOptimize(iv.mean.data());
  }
}
BENCHMARK(BM_InfluenceAll)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_KendallTau(benchmark::State& state) {
  const auto n = static_cast<size_t>(state.range(0));
  tempo::Rng rng(42);
  std::vector<double> a(n), b(n);
  for (size_t i = 0; i < n; ++i) {
    a[i] = rng.next_double();
    b[i] = rng.next_below(50) ? rng.next_double() : a[i];
  }
  for (auto _ : state) {
    auto res = tempo::kendall_tau_b(a, b);
    benchmark::DoNotOptimize(res.tau);
  }
}
BENCHMARK(BM_KendallTau)->Arg(1000)->Arg(10000);

void BM_SweepBlock(benchmark::State& state) {
  const auto net = bench_network(60, 1500, 200);
  tempo::SweepConfig cfg;
  cfg.betas = {0.25};
  cfg.t0_fractions = {0.0};
  cfg.runs = 20;
  cfg.cache_dir = "none";
  for (auto _ : state) {
    auto result = tempo::run_sweep(net, cfg);
    benchmark::DoNotOptimize(result.rows.size());
  }
}
BENCHMARK(BM_SweepBlock)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
