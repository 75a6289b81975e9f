#pragma once

#include <cstdint>

#include "edgecast/geo.hpp"
#include "edgecast/latency.hpp"

namespace edgecast::sim {

/// The application tuple: compute demand (V) and latency bound (L). The
/// geographical block (G) and edge availability (S) live on the request and
/// topology respectively.
struct AppProfile {
  double demand_v = 1.0;       // service-time multiplier
  double threshold_ms = 50.0;  // latency bound
  double payload_bits = 1e6;   // request payload, mirrored into LinkParams

  void validate() const {
    if (!(demand_v > 0.0)) throw invalid_input_error("app: demand_v must be positive");
    if (!(threshold_ms > 0.0)) throw invalid_input_error("app: threshold_ms must be positive");
    if (!(payload_bits > 0.0)) throw invalid_input_error("app: payload_bits must be positive");
  }
};

/// One offload task.
struct Request {
  std::uint64_t req_id = 0;
  double arrival_s = 0.0;
  geo::GeoPoint ue_location;
  geo::ApId home_ap = 0;       // nearest AP to the UE
  double d_ue_home_km = 0.0;
  std::uint32_t block = 0;     // grid cell of the UE (G)
};

/// Outcome of one served request.
struct CompletionRecord {
  std::uint64_t req_id = 0;
  std::uint32_t target = 0;  // node index (edge ApId, or ap_count() for cloud)
  latency::LatencyBreakdown breakdown;
  double queue_wait_ms = 0.0;  // node_ms = queue_wait_ms + service_ms
  double service_ms = 0.0;
  bool met_deadline = false;
  double completion_s = 0.0;
};

}  // namespace edgecast::sim
