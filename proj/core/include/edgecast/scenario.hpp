#pragma once

// Scenario configuration: the full experiment parameterization, its JSON
// schema (versioned), and dotted-path overrides for ad-hoc what-ifs.

#include <cstdint>
#include <string>
#include <vector>

#include "edgecast/geo.hpp"
#include "edgecast/latency.hpp"
#include "edgecast/metrics.hpp"
#include "edgecast/policy.hpp"
#include "edgecast/queueing.hpp"
#include "edgecast/types.hpp"

namespace edgecast::sim {

inline constexpr int kConfigSchemaVersion = 1;

struct SynthSpec {
  std::uint32_t n = 200;
  std::string bbox_preset = "chicago";  // "chicago" or "custom"
  geo::BBox bbox = geo::kChicagoBBox;
  geo::SynthMode mode = geo::SynthMode::uniform;
  std::uint64_t seed = 42;
};

struct TopologySpec {
  bool use_csv = false;
  std::string csv_path;
  SynthSpec synth;
  std::uint32_t grid_rows = 32;
  std::uint32_t grid_cols = 32;
  std::string cloud_preset = "oregon";  // "oregon" or "custom"
  geo::GeoPoint cloud = geo::kOregonDatacenter;
};

struct ScenarioConfig {
  TopologySpec topology;
  queueing::ResourceSplit resource_split{50, 0.6};
  latency::LinkParams link;           // payload kept in sync with app.payload_bits
  AppProfile app{1.0, 1000.0, 2e6};
  double service_rate_mu = 50.0;      // per compute unit, requests/s (20 ms mean)
  double load = 1.0;                  // offered erlangs per compute unit
  double duration_s = 2.0;
  double warmup_s = 0.2;
  std::string policy = "baseline";
  policy::Options baseline_opt;       // scan horizon + saturation fallback
  double ue_radius_km = 0.5;          // UE placement disk around a random AP
  std::uint64_t seed = 1;

  ScenarioConfig() { link.payload_bits = app.payload_bits; }

  void validate() const;
};

/// Parses a config document; throws parse_error naming the offending field.
ScenarioConfig config_from_json_text(const std::string& text);

/// Loads a config file and applies `key=value` dotted-path overrides
/// (e.g. "load=8", "resource_split.cloud_fraction=0.2", "policy=econ").
ScenarioConfig load_config(const std::string& path,
                           const std::vector<std::string>& overrides = {});

std::string config_to_json_text(const ScenarioConfig& cfg, int indent = 2);

/// Report document: effective config echo plus the aggregated metrics.
/// Byte-identical for identical configs (determinism contract).
std::string report_to_json_text(const ScenarioConfig& cfg,
                                const metrics::MetricsReport& report, int indent = 2);

}  // namespace edgecast::sim
