// Microbenchmarks for the hot paths: great-circle scans, Erlang C, policy
// selection under saturation, and full scenario execution.

#include <benchmark/benchmark.h>

#include "edgecast/engine.hpp"
#include "edgecast/geo.hpp"
#include "edgecast/policy.hpp"
#include "edgecast/queueing.hpp"
#include "edgecast/rng.hpp"
#include "edgecast/state.hpp"

namespace {

using namespace edgecast;

void BM_HaversineNearest(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto topo = geo::synth_aps(n, geo::kChicagoBBox, geo::SynthMode::uniform, 7);
  const geo::ApIndex index(topo);
  rng::Stream r(3);
  for (auto _ : state) {
    const geo::GeoPoint ue{r.uniform(geo::kChicagoBBox.min_lat, geo::kChicagoBBox.max_lat),
                           r.uniform(geo::kChicagoBBox.min_lon, geo::kChicagoBBox.max_lon)};
    benchmark::DoNotOptimize(index.nearest(ue));
  }
}
BENCHMARK(BM_HaversineNearest)->Arg(200)->Arg(1100);

void BM_ErlangC(benchmark::State& state) {
  double lambda = 0.1;
  for (auto _ : state) {
    lambda += 0.001;
    if (lambda >= 31.0) lambda = 0.1;
    benchmark::DoNotOptimize(queueing::erlang_c(32, lambda, 1.0));
  }
}
BENCHMARK(BM_ErlangC);

void BM_PolicySelect(benchmark::State& state) {
  const auto kind = static_cast<policy::Kind>(state.range(0));
  auto topo = geo::synth_aps(200, geo::kChicagoBBox, geo::SynthMode::uniform, 42);
  const auto split = queueing::split_resources({50, 0.6}, topo.ap_count());
  latency::LinkParams link;
  sim::AppProfile app{1.0, 1000.0, link.payload_bits};
  sim::SimState sim_state(topo, split, link, app);
  for (std::uint32_t i = 0; i < sim_state.node_count(); ++i) {
    auto& node = sim_state.node(i);
    node.service_rate_mu = 50.0;
    node.busy = node.capacity;  // saturated: the argmax scans everything
  }
  rng::Stream r(5);
  sim::Request req;
  req.home_ap = 0;
  req.ue_location = topo.aps[0];
  for (auto _ : state) {
    req.home_ap = r.uniform_index(200);
    req.ue_location = topo.aps[req.home_ap];
    benchmark::DoNotOptimize(policy::select(kind, req, sim_state, {}));
  }
}
BENCHMARK(BM_PolicySelect)
    ->Arg(static_cast<int>(policy::Kind::baseline))
    ->Arg(static_cast<int>(policy::Kind::econ));

void BM_RunScenario(benchmark::State& state) {
  sim::ScenarioConfig cfg;
  cfg.topology.synth.n = 200;
  cfg.load = static_cast<double>(state.range(0));
  cfg.duration_s = 0.5;
  cfg.warmup_s = 0.05;
  const auto topo = sim::build_topology(cfg.topology);
  std::uint64_t completions = 0;
  for (auto _ : state) {
    const auto result = sim::run_scenario(cfg, topo);
    completions += result.report.completions;
    benchmark::DoNotOptimize(result.report.goodput_rps);
  }
  state.counters["completions/s"] =
      benchmark::Counter(static_cast<double>(completions), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunScenario)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExactOracle(benchmark::State& state) {
  rng::Stream r(11);
  std::vector<policy::OracleInstance> instances;
  for (int i = 0; i < 64; ++i) {
    policy::OracleInstance inst;
    for (int j = 0; j < 8; ++j) inst.nodes.push_back({1 + r.uniform_index(3)});
    for (int i2 = 0; i2 < 16; ++i2) {
      policy::OracleInstance::Req req;
      req.threshold_ms = r.uniform(5.0, 25.0);
      for (int j = 0; j < 8; ++j) req.latency_ms.push_back(r.uniform(0.0, 30.0));
      inst.requests.push_back(std::move(req));
    }
    instances.push_back(std::move(inst));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy::exact_oracle(instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_ExactOracle);

}  // namespace

BENCHMARK_MAIN();
