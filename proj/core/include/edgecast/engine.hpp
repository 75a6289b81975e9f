#pragma once

// The deterministic discrete-event engine: workload generation, the request
// lifecycle (arrive -> select -> travel -> queue -> serve -> complete) and
// scenario execution.

#include <vector>

#include "edgecast/geo.hpp"
#include "edgecast/metrics.hpp"
#include "edgecast/scenario.hpp"
#include "edgecast/types.hpp"

namespace edgecast::sim {

struct RunResult {
  metrics::MetricsReport report;
  std::vector<CompletionRecord> records;  // measured-window records only
};

/// Materializes the configured topology (CSV or synthetic).
geo::Topology build_topology(const TopologySpec& spec);

/// Poisson arrival stream with total rate load * total_units * mu / mean_V;
/// UE locations are drawn uniformly in a disk around a uniformly chosen AP.
/// Deterministic for a fixed config seed.
std::vector<Request> generate_workload(const ScenarioConfig& cfg,
                                       const geo::Topology& topo);

RunResult run_scenario(const ScenarioConfig& cfg);

/// Variant that reuses a prebuilt topology (sweeps share one immutable
/// topology across points).
RunResult run_scenario(const ScenarioConfig& cfg, const geo::Topology& topo);

}  // namespace edgecast::sim
