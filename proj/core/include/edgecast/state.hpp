#pragma once

// Mutable per-scenario state: one ComputeNode per AP plus the cloud, with
// the precomputed geometry the policies scan. Owned and mutated by a single
// event loop; distinct scenarios never share a SimState.

#include <cstdint>
#include <vector>

#include "edgecast/geo.hpp"
#include "edgecast/latency.hpp"
#include "edgecast/queueing.hpp"
#include "edgecast/types.hpp"

namespace edgecast::sim {

class SimState {
 public:
  SimState(const geo::Topology& topo, const queueing::SplitResult& split,
           const latency::LinkParams& link, const AppProfile& app);

  const geo::Topology& topo() const { return *topo_; }
  const latency::LinkParams& link() const { return link_; }
  const AppProfile& app() const { return app_; }

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  std::uint32_t cloud_id() const { return node_count() - 1; }
  bool is_cloud(std::uint32_t node) const { return node == cloud_id(); }

  queueing::ComputeNode& node(std::uint32_t id) { return nodes_[id]; }
  const queueing::ComputeNode& node(std::uint32_t id) const { return nodes_[id]; }

  /// Assigned requests still travelling toward `node`. Policies subtract
  /// these from availability so the decision feedback loop does not
  /// oscillate over the network-delay pipeline.
  std::uint32_t pending(std::uint32_t node) const { return pending_[node]; }
  void add_pending(std::uint32_t node) { ++pending_[node]; }
  void remove_pending(std::uint32_t node);

  /// Free units net of queue backlog and in-flight assignments.
  std::int64_t effective_available(std::uint32_t id) const {
    return nodes_[id].available() - static_cast<std::int64_t>(pending_[id]);
  }
  bool has_free_unit(std::uint32_t id) const {
    const auto& n = nodes_[id];
    return n.capacity > 0 &&
           n.busy + n.wait_queue.size() + pending_[id] < n.capacity;
  }

  /// Edge ApIds with nonzero capacity, sorted by distance from `ap`
  /// (ties by lowest ApId). Used by the baseline neighbor scan.
  const std::vector<geo::ApId>& edge_scan_order(geo::ApId ap) const {
    return scan_order_[ap];
  }

  /// Edge ApIds with nonzero capacity (ascending id).
  const std::vector<geo::ApId>& capacity_edges() const { return capacity_edges_; }

  /// Per-block edge availability under this scenario's resource split (the
  /// S of the application tuple).
  const std::vector<bool>& edge_present() const { return edge_present_; }

  double dist_ap_cloud_km(geo::ApId ap) const { return dist_ap_cloud_km_[ap]; }

  bool any_capacity() const;

  /// Network-only legs for serving `req` at `target` (no node delay).
  double access_ms(const Request& req) const;
  double switch_ms(const Request& req, std::uint32_t target) const;
  double backhaul_ms(const Request& req) const;

  /// Full latency estimate for serving `req` at `target` using the node's
  /// current expected delay. Throws no_capacity_error for capacity-0 targets.
  double predict_latency_ms(const Request& req, std::uint32_t target) const;

 private:
  const geo::Topology* topo_;
  latency::LinkParams link_;
  AppProfile app_;
  std::vector<queueing::ComputeNode> nodes_;  // [0, ap_count) edges, last = cloud
  std::vector<std::uint32_t> pending_;
  std::vector<geo::ApId> capacity_edges_;
  std::vector<bool> edge_present_;
  std::vector<std::uint32_t> edge_col_;  // ApId -> column in dist_home_edge_
  std::vector<std::vector<geo::ApId>> scan_order_;
  std::vector<double> dist_ap_cloud_km_;
  std::vector<double> dist_home_edge_km_;  // ap_count x capacity_edges matrix
};

}  // namespace edgecast::sim
