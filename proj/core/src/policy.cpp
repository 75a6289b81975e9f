#include "edgecast/policy.hpp"

#include <algorithm>
#include <limits>

namespace edgecast::policy {

Kind parse_kind(const std::string& name) {
  if (name == "baseline") return Kind::baseline;
  if (name == "econ") return Kind::econ;
  if (name == "cloud_only") return Kind::cloud_only;
  throw invalid_input_error("policy: unknown policy '" + name +
                            "' (expected baseline|econ|cloud_only)");
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::baseline: return "baseline";
    case Kind::econ: return "econ";
    case Kind::cloud_only: return "cloud_only";
  }
  return "?";
}

BaselineFallback parse_fallback(const std::string& name) {
  if (name == "cloud") return BaselineFallback::cloud;
  if (name == "least_loaded") return BaselineFallback::least_loaded;
  throw invalid_input_error("policy: unknown baseline fallback '" + name +
                            "' (expected cloud|least_loaded)");
}

std::string fallback_name(BaselineFallback f) {
  return f == BaselineFallback::cloud ? "cloud" : "least_loaded";
}

namespace {

Assignment make_assignment(const sim::Request& req, const sim::SimState& state,
                           std::uint32_t target) {
  Assignment a;
  a.req_id = req.req_id;
  a.target = target;
  a.predicted_ms = state.predict_latency_ms(req, target);
  a.usable = a.predicted_ms <= state.app().threshold_ms;
  return a;
}

/// Node with the most available units among capacity-bearing nodes; ties go
/// to the cloud, then the lowest id.
std::uint32_t least_loaded_node(const sim::SimState& state) {
  const auto cloud = state.cloud_id();
  std::int64_t best_avail = std::numeric_limits<std::int64_t>::min();
  std::uint32_t best = cloud;
  bool found = false;
  if (state.node(cloud).capacity > 0) {
    best_avail = state.effective_available(cloud);
    found = true;
  }
  for (const auto edge : state.capacity_edges()) {
    const auto avail = state.effective_available(edge);
    if (!found || avail > best_avail) {
      best_avail = avail;
      best = edge;
      found = true;
    }
  }
  if (!found) throw no_capacity_error("policy: no node with capacity");
  return best;
}

}  // namespace

Assignment select_baseline(const sim::Request& req, const sim::SimState& state,
                           const Options& opt) {
  if (!state.any_capacity()) throw no_capacity_error("baseline: no node with capacity");

  const auto& order = state.edge_scan_order(req.home_ap);
  const std::size_t horizon =
      opt.scan_horizon == 0 ? order.size()
                            : std::min<std::size_t>(opt.scan_horizon, order.size());
  for (std::size_t i = 0; i < horizon; ++i) {
    if (state.has_free_unit(order[i])) {
      return make_assignment(req, state, order[i]);
    }
  }

  const auto cloud = state.cloud_id();
  if (state.node(cloud).capacity > 0) {
    if (opt.fallback == BaselineFallback::cloud || state.has_free_unit(cloud)) {
      return make_assignment(req, state, cloud);
    }
  }
  // Every node saturated (or no cloud capacity): least-loaded queueing.
  return make_assignment(req, state, least_loaded_node(state));
}

Assignment select_econ(const sim::Request& req, const sim::SimState& state) {
  if (!state.any_capacity()) throw no_capacity_error("econ: no node with capacity");

  const auto consider = [&](std::uint32_t id, std::uint32_t& best, std::int64_t& best_avail,
                            double& best_pred, bool& found) {
    const auto& n = state.node(id);
    if (n.capacity == 0) return;
    const auto avail = state.effective_available(id);
    if (found && avail < best_avail) return;
    const double pred = state.predict_latency_ms(req, id);
    if (!found || avail > best_avail || pred < best_pred) {
      best = id;
      best_avail = avail;
      best_pred = pred;
      found = true;
    }
    // equal availability and equal prediction: keep the lower id (scan order)
  };

  std::uint32_t best = 0;
  std::int64_t best_avail = 0;
  double best_pred = 0.0;
  bool found = false;
  for (const auto edge : state.capacity_edges()) {
    consider(edge, best, best_avail, best_pred, found);
  }
  consider(state.cloud_id(), best, best_avail, best_pred, found);

  Assignment a;
  a.req_id = req.req_id;
  a.target = best;
  a.predicted_ms = best_pred;
  a.usable = best_pred <= state.app().threshold_ms;
  return a;
}

Assignment select_cloud_only(const sim::Request& req, const sim::SimState& state) {
  const auto cloud = state.cloud_id();
  if (state.node(cloud).capacity == 0) {
    throw no_capacity_error("cloud_only: cloud has zero capacity");
  }
  return make_assignment(req, state, cloud);
}

Assignment select(Kind kind, const sim::Request& req, const sim::SimState& state,
                  const Options& opt) {
  switch (kind) {
    case Kind::baseline: return select_baseline(req, state, opt);
    case Kind::econ: return select_econ(req, state);
    case Kind::cloud_only: return select_cloud_only(req, state);
  }
  throw invalid_input_error("policy: bad kind");
}

// ---------------------------------------------------------------------------

namespace {

struct OracleSearch {
  const OracleInstance& inst;
  std::vector<std::uint32_t> slots;       // remaining capacity per node
  std::vector<std::int32_t> current;      // working assignment
  OracleResult best;

  explicit OracleSearch(const OracleInstance& instance)
      : inst(instance), current(instance.requests.size(), -1) {
    slots.reserve(inst.nodes.size());
    for (const auto& n : inst.nodes) slots.push_back(n.capacity);
    best.assignment.assign(inst.requests.size(), -1);
  }

  // Requests are explored in order and, per request, nodes in id order with
  // "skip" last, so leaves are visited in lexicographic witness order. Only
  // strict improvements replace the incumbent and the bound prunes only
  // branches that cannot strictly improve, so the recorded optimum is the
  // lexicographically smallest one (pruned equal-count leaves always come
  // later in the order).
  void dfs(std::size_t i, std::uint32_t count) {
    if (i == inst.requests.size()) {
      if (count > best.max_assignable) {
        best.max_assignable = count;
        best.assignment = current;
      }
      return;
    }
    const auto remaining = static_cast<std::uint32_t>(inst.requests.size() - i);
    if (count + remaining <= best.max_assignable) return;
    const auto& req = inst.requests[i];
    for (std::size_t j = 0; j < inst.nodes.size(); ++j) {
      if (slots[j] == 0) continue;
      if (req.latency_ms[j] > req.threshold_ms) continue;
      --slots[j];
      current[i] = static_cast<std::int32_t>(j);
      dfs(i + 1, count + 1);
      current[i] = -1;
      ++slots[j];
    }
    dfs(i + 1, count);  // leave request i unassigned
  }
};

}  // namespace

OracleResult exact_oracle(const OracleInstance& instance) {
  if (instance.requests.size() > kOracleMaxRequests ||
      instance.nodes.size() > kOracleMaxNodes) {
    throw instance_too_large_error(
        "exact_oracle: instance exceeds desk scale (" +
        std::to_string(instance.requests.size()) + " requests, " +
        std::to_string(instance.nodes.size()) + " nodes; limits " +
        std::to_string(kOracleMaxRequests) + "/" + std::to_string(kOracleMaxNodes) + ")");
  }
  for (const auto& r : instance.requests) {
    if (r.latency_ms.size() != instance.nodes.size()) {
      throw invalid_input_error("exact_oracle: latency row size must equal node count");
    }
  }

  // The incumbent starts as the empty assignment, so a zero-feasibility
  // instance still yields a well-defined witness.
  OracleSearch search(instance);
  search.dfs(0, 0);
  return search.best;
}

}  // namespace edgecast::policy
