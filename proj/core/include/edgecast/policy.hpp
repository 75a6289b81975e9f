#pragma once

// Request-to-node assignment policies and the desk-scale exact oracle for
// the maximum-cardinality deadline assignment.

#include <cstdint>
#include <string>
#include <vector>

#include "edgecast/state.hpp"
#include "edgecast/types.hpp"

namespace edgecast::policy {

enum class Kind { baseline, econ, cloud_only };

Kind parse_kind(const std::string& name);  // "baseline" | "econ" | "cloud_only"
std::string kind_name(Kind k);

/// What Baseline does once no edge in the scan horizon has a free unit.
///   cloud:        hand the request to the cloud (queueing there if full) —
///                 the distributed scheme has no global load view.
///   least_loaded: pick the node with the most available units net of
///                 backlog (ties to the cloud, then lowest id).
/// Both collapse to least-loaded-among-edges when the cloud has no capacity.
enum class BaselineFallback { cloud, least_loaded };

BaselineFallback parse_fallback(const std::string& name);
std::string fallback_name(BaselineFallback f);

struct Options {
  std::uint32_t scan_horizon = 0;  // 0 = scan all capacity-bearing edges
  BaselineFallback fallback = BaselineFallback::least_loaded;
};

struct Assignment {
  std::uint64_t req_id = 0;
  std::uint32_t target = 0;
  double predicted_ms = 0.0;
  bool usable = false;  // predicted_ms <= app threshold
};

/// Nearest-neighbor scheme: edges in increasing distance from the home AP,
/// first one with a free unit wins; otherwise the configured fallback.
Assignment select_baseline(const sim::Request& req, const sim::SimState& state,
                           const Options& opt = {});

/// Global scheme: the node (edges and cloud) with the most available units,
/// ties by smaller predicted latency, then lowest id.
Assignment select_econ(const sim::Request& req, const sim::SimState& state);

/// Everything to the central cloud.
Assignment select_cloud_only(const sim::Request& req, const sim::SimState& state);

Assignment select(Kind kind, const sim::Request& req, const sim::SimState& state,
                  const Options& opt = {});

// ---------------------------------------------------------------------------
// Exact oracle: static snapshot, each node holds up to `capacity` concurrent
// requests, request i is feasible at node j iff latency_ms[i][j] <= threshold.

struct OracleInstance {
  struct Node {
    std::uint32_t capacity = 0;
  };
  struct Req {
    double threshold_ms = 0.0;
    std::vector<double> latency_ms;  // one entry per node
  };
  std::vector<Node> nodes;
  std::vector<Req> requests;
};

inline constexpr std::size_t kOracleMaxRequests = 16;
inline constexpr std::size_t kOracleMaxNodes = 8;

struct OracleResult {
  std::uint32_t max_assignable = 0;
  /// Witness: per-request node index, or -1 when left unassigned. The
  /// lexicographically smallest vector among optima (unassigned sorts last).
  std::vector<std::int32_t> assignment;
};

/// Branch-and-bound maximum-cardinality assignment. Deterministic.
OracleResult exact_oracle(const OracleInstance& instance);

}  // namespace edgecast::policy
