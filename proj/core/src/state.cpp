#include "edgecast/state.hpp"

#include <algorithm>
#include <limits>

namespace edgecast::sim {

SimState::SimState(const geo::Topology& topo, const queueing::SplitResult& split,
                   const latency::LinkParams& link, const AppProfile& app)
    : topo_(&topo), link_(link), app_(app) {
  const auto n_aps = topo.ap_count();
  if (split.edge_units.size() != n_aps) {
    throw invalid_input_error("sim state: split does not match topology AP count");
  }
  link_.validate();
  app_.validate();

  nodes_.reserve(n_aps + 1);
  for (std::size_t i = 0; i < n_aps; ++i) {
    queueing::ComputeNode node;
    node.node_id = static_cast<std::uint32_t>(i);
    node.kind = queueing::NodeKind::edge;
    node.capacity = split.edge_units[i];
    node.service_rate_mu = 1.0;  // engine overrides via scenario config
    nodes_.push_back(std::move(node));
    if (split.edge_units[i] > 0) capacity_edges_.push_back(static_cast<geo::ApId>(i));
  }
  queueing::ComputeNode cloud;
  cloud.node_id = static_cast<std::uint32_t>(n_aps);
  cloud.kind = queueing::NodeKind::cloud;
  cloud.capacity = split.cloud_units;
  nodes_.push_back(std::move(cloud));
  pending_.assign(nodes_.size(), 0);
  edge_present_ = topo.edge_presence(split.edge_units);

  dist_ap_cloud_km_.reserve(n_aps);
  for (std::size_t i = 0; i < n_aps; ++i) {
    dist_ap_cloud_km_.push_back(geo::haversine_km(topo.aps[i], topo.cloud_location));
  }

  // Neighbor scan order and home->edge distances over capacity-bearing
  // edges only, computed once per scenario.
  scan_order_.resize(n_aps);
  edge_col_.assign(n_aps, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t j = 0; j < capacity_edges_.size(); ++j) {
    edge_col_[capacity_edges_[j]] = static_cast<std::uint32_t>(j);
  }
  if (!capacity_edges_.empty()) {
    dist_home_edge_km_.resize(n_aps * capacity_edges_.size());
    std::vector<std::pair<double, geo::ApId>> keyed(capacity_edges_.size());
    for (std::size_t home = 0; home < n_aps; ++home) {
      for (std::size_t j = 0; j < capacity_edges_.size(); ++j) {
        const auto edge = capacity_edges_[j];
        const double d = geo::haversine_km(topo.aps[home], topo.aps[edge]);
        dist_home_edge_km_[home * capacity_edges_.size() + j] = d;
        keyed[j] = {d, edge};
      }
      std::sort(keyed.begin(), keyed.end());
      auto& order = scan_order_[home];
      order.reserve(keyed.size());
      for (const auto& [d, id] : keyed) order.push_back(id);
    }
  }
}

bool SimState::any_capacity() const {
  if (nodes_.back().capacity > 0) return true;
  return !capacity_edges_.empty();
}

void SimState::remove_pending(std::uint32_t node) {
  if (pending_[node] == 0) {
    throw std::logic_error("sim state: pending underflow on node " + std::to_string(node));
  }
  --pending_[node];
}

double SimState::access_ms(const Request& req) const {
  return latency::access_delay_ms(req.d_ue_home_km, link_);
}

double SimState::switch_ms(const Request& req, std::uint32_t target) const {
  if (target == req.home_ap) return 0.0;
  const auto col = edge_col_[target];
  if (col == std::numeric_limits<std::uint32_t>::max()) {
    // Not a capacity-bearing edge; fall back to the direct computation.
    return latency::interedge_delay_ms(req.home_ap, target, *topo_, link_);
  }
  const double d = dist_home_edge_km_[req.home_ap * capacity_edges_.size() + col];
  return link_.wired_ms_per_km * d + link_.interedge_serialization_ms();
}

double SimState::backhaul_ms(const Request& req) const {
  return latency::backhaul_delay_ms(dist_ap_cloud_km_[req.home_ap], link_);
}

double SimState::predict_latency_ms(const Request& req, std::uint32_t target) const {
  const auto& n = nodes_[target];
  const double node_ms = latency::expected_node_ms(n, app_.demand_v);
  if (is_cloud(target)) {
    return access_ms(req) + backhaul_ms(req) + node_ms;
  }
  return access_ms(req) + switch_ms(req, target) + node_ms;
}

}  // namespace edgecast::sim
