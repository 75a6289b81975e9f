#pragma once

// Parameter sweeps over the load / resource-split / bandwidth / policy axes
// with multi-seed replication. Long-format CSV out, one observation per row,
// plus a per-point seed-aggregated companion table.

#include <cstdint>
#include <string>
#include <vector>

#include "edgecast/scenario.hpp"

namespace edgecast::sweep {

struct SweepSpec {
  sim::ScenarioConfig base;
  // Empty axis = keep the base value. Expansion order is the canonical axis
  // order (load, cloud_fraction, bw_interedge, bw_ap_cloud, policy), seeds
  // innermost, regardless of spec-file key order.
  std::vector<double> load;
  std::vector<double> cloud_fraction;
  std::vector<double> bw_interedge;
  std::vector<double> bw_ap_cloud;
  std::vector<std::string> policy;
  std::vector<std::uint64_t> seeds;
  std::uint64_t max_points = 10000;

  std::uint64_t point_count() const;
};

/// Parses a sweep spec document; `spec_dir` resolves a relative `base` path.
SweepSpec sweep_from_json_text(const std::string& text, const std::string& spec_dir = "");
SweepSpec load_sweep(const std::string& path);

struct SweepRow {
  double load = 0.0;
  double cloud_fraction = 0.0;
  double bw_interedge = 0.0;
  double bw_ap_cloud = 0.0;
  std::string policy;
  std::uint64_t seed = 0;
  double delay_constraint_pct = 0.0;
  double goodput_rps = 0.0;
  double mean_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
};

/// Expands the cartesian product and runs every (point, seed) scenario.
/// `jobs` = 0 uses the hardware concurrency. Row order is deterministic and
/// independent of `jobs`. Throws when the product exceeds max_points.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs = 0);

/// Shortest round-trip decimal representation (stable across reruns).
std::string format_double(double v);

/// Writes rows in long format. The file is created as `<path>.partial` and
/// renamed on success, so an error never leaves a bare partial CSV behind.
void write_rows_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Per-point aggregation across seeds (mean and min/max).
void write_aggregate_csv(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace edgecast::sweep
