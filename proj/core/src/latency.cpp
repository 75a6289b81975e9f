#include "edgecast/latency.hpp"

#include <cmath>

namespace edgecast::latency {

void LinkParams::validate() const {
  auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!nonneg(alpha_ms_per_km) || !nonneg(delta_ms_per_km) || !nonneg(beta_ms_per_km) ||
      !nonneg(wired_ms_per_km)) {
    throw invalid_input_error("link: propagation coefficients must be >= 0");
  }
  if (!(bw_ap_cloud_bps > 0.0) || !(bw_interedge_bps > 0.0)) {
    throw invalid_input_error("link: bandwidths must be positive");
  }
  if (!(payload_bits > 0.0)) throw invalid_input_error("link: payload_bits must be positive");
}

double access_delay_ms(double d_ue_ap_km, const LinkParams& p) {
  if (!(d_ue_ap_km >= 0.0)) throw invalid_input_error("access_delay: negative distance");
  return (p.alpha_ms_per_km + p.delta_ms_per_km) * d_ue_ap_km;
}

double backhaul_delay_ms(double d_ap_cloud_km, const LinkParams& p) {
  if (!(d_ap_cloud_km >= 0.0)) throw invalid_input_error("backhaul_delay: negative distance");
  return p.beta_ms_per_km * d_ap_cloud_km + p.ap_cloud_serialization_ms();
}

double interedge_delay_ms(geo::ApId home, geo::ApId serving,
                          const geo::Topology& topo, const LinkParams& p) {
  if (home >= topo.ap_count() || serving >= topo.ap_count()) {
    throw invalid_topology_error("interedge_delay: unknown ApId");
  }
  if (home == serving) return 0.0;
  const double d = geo::haversine_km(topo.aps[home], topo.aps[serving]);
  return p.wired_ms_per_km * d + p.interedge_serialization_ms();
}

namespace {

void check_component(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw invalid_input_error(std::string("compose: negative or non-finite ") + name);
  }
}

}  // namespace

LatencyBreakdown compose_edge_latency(double access_ms, double switch_ms, double node_ms) {
  check_component(access_ms, "access_ms");
  check_component(switch_ms, "switch_ms");
  check_component(node_ms, "node_ms");
  LatencyBreakdown b;
  b.access_ms = access_ms;
  b.switch_ms = switch_ms;
  b.node_ms = node_ms;
  b.total_ms = b.access_ms + b.backhaul_ms + b.switch_ms + b.node_ms;
  return b;
}

LatencyBreakdown compose_cloud_latency(double access_ms, double backhaul_ms, double node_ms) {
  check_component(access_ms, "access_ms");
  check_component(backhaul_ms, "backhaul_ms");
  check_component(node_ms, "node_ms");
  LatencyBreakdown b;
  b.access_ms = access_ms;
  b.backhaul_ms = backhaul_ms;
  b.node_ms = node_ms;
  b.total_ms = b.access_ms + b.backhaul_ms + b.switch_ms + b.node_ms;
  return b;
}

double expected_node_ms(const queueing::ComputeNode& node, double demand_v) {
  if (node.capacity == 0) {
    throw no_capacity_error("expected_node_ms: node " + std::to_string(node.node_id) +
                            " has zero capacity");
  }
  const double mean_service_ms = 1e3 * demand_v / node.service_rate_mu;
  const double backlog = static_cast<double>(node.wait_queue.size()) +
                         (node.busy >= node.capacity ? 1.0 : 0.0);
  return backlog * mean_service_ms / static_cast<double>(node.capacity) + mean_service_ms;
}

}  // namespace edgecast::latency
