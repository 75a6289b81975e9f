#pragma once

// Aggregation of completion records into the study's measures:
// delay-constraint (%), goodput, goodput ratio and response-time statistics.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgecast/errors.hpp"
#include "edgecast/types.hpp"

namespace edgecast::metrics {

struct MetricsReport {
  std::uint64_t arrivals = 0;
  std::uint64_t completions = 0;
  std::uint64_t deadline_hits = 0;
  std::uint64_t unfinished = 0;  // in flight or queued at the horizon
  double delay_constraint_pct = 0.0;
  double goodput_rps = 0.0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
  double mean_wait_ms = 0.0;
  double mean_service_ms = 0.0;
  double measured_horizon_s = 0.0;
  std::vector<double> node_utilization;  // per node, busy-unit share of capacity
};

/// 100 * hits / arrivals. The denominator is offered requests, so requests
/// still queued at the horizon count against capacity.
double delay_constraint_pct(std::uint64_t deadline_hits, std::uint64_t arrivals);

/// Deadline-meeting completions per second of measured horizon.
double goodput_rps(std::uint64_t deadline_hits, double horizon_s);

/// econ.goodput / baseline.goodput; nullopt marks an undefined ratio
/// (baseline goodput of zero) rather than a crash.
std::optional<double> goodput_ratio(const MetricsReport& econ,
                                    const MetricsReport& baseline);

/// Nearest-rank percentile of a sorted sample (p in (0, 100]).
double percentile_nearest_rank(std::span<const double> sorted, double p);

/// Builds the full report from the measured record stream.
MetricsReport aggregate(std::span<const sim::CompletionRecord> records,
                        std::uint64_t arrivals, double horizon_s,
                        std::vector<double> node_utilization = {});

}  // namespace edgecast::metrics
