#pragma once

// M/M/c compute model: analytic steady-state results used as oracles and for
// capacity reasoning, plus the dynamic per-node occupancy/queue state the
// event loop mutates.

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "edgecast/errors.hpp"
#include "edgecast/rng.hpp"

namespace edgecast::queueing {

using RequestId = std::uint64_t;

struct WaitProbability {
  double p_wait = 0.0;
  bool stable = true;  // false when lambda >= c*mu; p_wait reported as 1.0
};

/// Erlang C: probability an arrival to an M/M/c system has to wait.
/// Computed with the Erlang B recurrence, no factorials.
WaitProbability erlang_c(std::uint32_t c, double lambda, double mu);

/// Mean queueing delay W_q = ErlangC / (c*mu - lambda), seconds.
/// Throws unstable_regime_error when lambda >= c*mu.
double mmc_mean_wait(std::uint32_t c, double lambda, double mu);

/// Mean response time W_q + 1/mu, seconds.
double mmc_mean_response(std::uint32_t c, double lambda, double mu);

enum class NodeKind { edge, cloud };

struct ComputeNode {
  std::uint32_t node_id = 0;
  NodeKind kind = NodeKind::edge;
  std::uint32_t capacity = 0;  // compute units (c)
  std::uint32_t busy = 0;      // units in service, <= capacity
  std::deque<RequestId> wait_queue;
  double service_rate_mu = 1.0;  // requests/s per unit

  /// Free units net of queue backlog; negative when a queue has formed.
  std::int64_t available() const {
    return static_cast<std::int64_t>(capacity) - static_cast<std::int64_t>(busy) -
           static_cast<std::int64_t>(wait_queue.size());
  }
  bool has_free_unit() const { return capacity > 0 && busy < capacity; }
};

enum class AdmitResult { started, queued };

/// Starts the request if a unit is free, otherwise appends it to the FIFO.
AdmitResult node_admit(ComputeNode& node, RequestId req);

/// Finishes one in-service request. If the FIFO is non-empty its head starts
/// service immediately and its id is returned.
std::optional<RequestId> node_release(ComputeNode& node);

struct ResourceSplit {
  std::uint64_t total_units = 0;
  double cloud_fraction = 0.0;  // f in [0, 1]
};

struct SplitResult {
  std::uint32_t cloud_units = 0;
  std::vector<std::uint32_t> edge_units;  // one entry per AP

  std::uint64_t total() const;
};

/// cloud = round(f * total), edges share the rest as evenly as possible with
/// the remainder going to the lowest ApIds. Conserves total_units exactly.
SplitResult split_resources(const ResourceSplit& split, std::size_t n_aps);

/// Exponential service draw with mean demand_v / mu, seconds.
double sample_service_time(rng::Stream& rng, double mu, double demand_v);

}  // namespace edgecast::queueing
