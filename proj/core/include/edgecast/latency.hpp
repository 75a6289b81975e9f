#pragma once

// End-to-end latency composition: access, backhaul and inter-edge switching
// legs plus the compute-node delay. The bandwidth-derived legs are realized
// as serialization delays (payload / bandwidth); the distance-proportional
// view of that term is exposed via implied_gamma_ms_per_km for reporting.

#include <cstdint>

#include "edgecast/errors.hpp"
#include "edgecast/geo.hpp"
#include "edgecast/queueing.hpp"

namespace edgecast::latency {

struct LinkParams {
  double alpha_ms_per_km = 0.005;  // UE<->AP propagation
  double delta_ms_per_km = 0.01;   // UE<->AP wireless penalty
  double beta_ms_per_km = 0.005;   // AP<->cloud propagation
  double wired_ms_per_km = 0.005;  // inter-edge propagation
  double bw_ap_cloud_bps = 1e9;
  double bw_interedge_bps = 1e10;
  double payload_bits = 1e6;

  double ap_cloud_serialization_ms() const { return 1e3 * payload_bits / bw_ap_cloud_bps; }
  double interedge_serialization_ms() const { return 1e3 * payload_bits / bw_interedge_bps; }

  /// Distance-normalized view of the AP->cloud serialization term.
  double implied_gamma_ms_per_km(double d_ap_cloud_km) const {
    return d_ap_cloud_km > 0.0 ? ap_cloud_serialization_ms() / d_ap_cloud_km : 0.0;
  }

  void validate() const;
};

struct LatencyBreakdown {
  double access_ms = 0.0;
  double backhaul_ms = 0.0;
  double switch_ms = 0.0;  // d_s
  double node_ms = 0.0;    // queue wait + service
  double total_ms = 0.0;   // always access + backhaul + switch + node
};

/// (alpha + delta) * d, the UE->AP leg.
double access_delay_ms(double d_ue_ap_km, const LinkParams& p);

/// beta * d + payload serialization over the AP->cloud link.
double backhaul_delay_ms(double d_ap_cloud_km, const LinkParams& p);

/// 0 when served at the home AP; otherwise wired propagation between the two
/// APs plus payload serialization over the inter-edge link.
double interedge_delay_ms(geo::ApId home, geo::ApId serving,
                          const geo::Topology& topo, const LinkParams& p);

LatencyBreakdown compose_edge_latency(double access_ms, double switch_ms, double node_ms);
LatencyBreakdown compose_cloud_latency(double access_ms, double backhaul_ms, double node_ms);

/// Expected node delay (ms) from current occupancy: queued work drained at
/// rate c plus one mean service time. Used by policies for usability checks.
double expected_node_ms(const queueing::ComputeNode& node, double demand_v);

}  // namespace edgecast::latency
