#include "edgecast/queueing.hpp"

#include <cmath>
#include <numeric>

namespace edgecast::queueing {

WaitProbability erlang_c(std::uint32_t c, double lambda, double mu) {
  if (c == 0) throw no_capacity_error("erlang_c: c must be >= 1");
  if (!(mu > 0.0)) throw invalid_input_error("erlang_c: mu must be positive");
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    throw invalid_input_error("erlang_c: lambda must be finite and >= 0");
  }
  if (lambda == 0.0) return {0.0, true};
  if (lambda >= static_cast<double>(c) * mu) return {1.0, false};

  const double a = lambda / mu;  // offered erlangs
  // Erlang B recurrence: B(0) = 1, B(k) = a*B(k-1) / (k + a*B(k-1)).
  double b = 1.0;
  for (std::uint32_t k = 1; k <= c; ++k) {
    b = a * b / (static_cast<double>(k) + a * b);
  }
  const double rho = a / static_cast<double>(c);
  return {b / (1.0 - rho * (1.0 - b)), true};
}

double mmc_mean_wait(std::uint32_t c, double lambda, double mu) {
  const auto p = erlang_c(c, lambda, mu);
  if (!p.stable) {
    throw unstable_regime_error("mmc_mean_wait: lambda >= c*mu has no steady state");
  }
  if (lambda == 0.0) return 0.0;
  return p.p_wait / (static_cast<double>(c) * mu - lambda);
}

double mmc_mean_response(std::uint32_t c, double lambda, double mu) {
  return mmc_mean_wait(c, lambda, mu) + 1.0 / mu;
}

AdmitResult node_admit(ComputeNode& node, RequestId req) {
  if (node.capacity == 0) {
    throw no_capacity_error("node_admit: node " + std::to_string(node.node_id) +
                            " has zero capacity");
  }
  if (node.busy < node.capacity) {
    ++node.busy;
    return AdmitResult::started;
  }
  node.wait_queue.push_back(req);
  return AdmitResult::queued;
}

std::optional<RequestId> node_release(ComputeNode& node) {
  if (node.busy == 0) {
    throw std::logic_error("node_release: release on idle node " +
                           std::to_string(node.node_id));
  }
  --node.busy;
  if (node.wait_queue.empty()) return std::nullopt;
  const RequestId next = node.wait_queue.front();
  node.wait_queue.pop_front();
  ++node.busy;
  return next;
}

std::uint64_t SplitResult::total() const {
  return cloud_units + std::accumulate(edge_units.begin(), edge_units.end(),
                                       std::uint64_t{0});
}

SplitResult split_resources(const ResourceSplit& split, std::size_t n_aps) {
  if (split.cloud_fraction < 0.0 || split.cloud_fraction > 1.0 ||
      !std::isfinite(split.cloud_fraction)) {
    throw invalid_input_error("split_resources: cloud_fraction must be in [0, 1]");
  }
  if (n_aps == 0) throw invalid_input_error("split_resources: need at least one AP");

  SplitResult out;
  const auto cloud =
      static_cast<std::uint64_t>(std::llround(split.cloud_fraction *
                                              static_cast<double>(split.total_units)));
  out.cloud_units = static_cast<std::uint32_t>(std::min(cloud, split.total_units));
  const std::uint64_t edges = split.total_units - out.cloud_units;

  const std::uint64_t base = edges / n_aps;
  const std::uint64_t rem = edges % n_aps;  // extra unit to the lowest ApIds
  out.edge_units.resize(n_aps);
  for (std::size_t i = 0; i < n_aps; ++i) {
    out.edge_units[i] = static_cast<std::uint32_t>(base + (i < rem ? 1 : 0));
  }
  return out;
}

double sample_service_time(rng::Stream& rng, double mu, double demand_v) {
  if (!(mu > 0.0) || !(demand_v > 0.0)) {
    throw invalid_input_error("sample_service_time: mu and demand_v must be positive");
  }
  return rng.exponential(mu / demand_v);
}

}  // namespace edgecast::queueing
