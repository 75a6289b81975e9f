#include "edgecast/engine.hpp"

#include <algorithm>
#include <cmath>

#include "edgecast/event_queue.hpp"
#include "edgecast/policy.hpp"
#include "edgecast/state.hpp"

namespace edgecast::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kKmPerDegLat = 2.0 * kPi * geo::kEarthRadiusKm / 360.0;

}  // namespace

geo::Topology build_topology(const TopologySpec& spec) {
  if (spec.use_csv) {
    return geo::load_ap_csv(spec.csv_path, spec.grid_rows, spec.grid_cols, spec.cloud);
  }
  return geo::synth_aps(spec.synth.n, spec.synth.bbox, spec.synth.mode, spec.synth.seed,
                        spec.grid_rows, spec.grid_cols, spec.cloud);
}

std::vector<Request> generate_workload(const ScenarioConfig& cfg,
                                       const geo::Topology& topo) {
  cfg.validate();
  if (topo.ap_count() == 0) throw invalid_topology_error("workload: topology has no APs");

  const double lambda_total = cfg.load *
                              static_cast<double>(cfg.resource_split.total_units) *
                              cfg.service_rate_mu / cfg.app.demand_v;
  std::vector<Request> out;
  if (lambda_total <= 0.0) return out;

  auto arrivals = rng::substream(cfg.seed, rng::Substream::arrivals);
  auto locations = rng::substream(cfg.seed, rng::Substream::locations);
  const geo::ApIndex index(topo);
  const auto n_aps = static_cast<std::uint32_t>(topo.ap_count());

  double t = arrivals.exponential(lambda_total);
  std::uint64_t id = 0;
  while (t <= cfg.duration_s) {
    const auto& anchor = topo.aps[locations.uniform_index(n_aps)];
    // Uniform draw over a disk of radius ue_radius_km around the anchor AP.
    const double r = cfg.ue_radius_km * std::sqrt(locations.uniform01());
    const double theta = 2.0 * kPi * locations.uniform01();
    geo::GeoPoint ue;
    ue.lat = anchor.lat + (r * std::cos(theta)) / kKmPerDegLat;
    const double clat = std::cos(anchor.lat * kPi / 180.0);
    ue.lon = anchor.lon + (r * std::sin(theta)) / (kKmPerDegLat * std::max(clat, 1e-6));
    ue.lat = std::clamp(ue.lat, -90.0, 90.0);
    ue.lon = std::clamp(ue.lon, -180.0, 180.0);

    Request req;
    req.req_id = id++;
    req.arrival_s = t;
    req.ue_location = ue;
    const auto [home, d_km] = index.nearest(ue);
    req.home_ap = home;
    req.d_ue_home_km = d_km;
    req.block = topo.grid.block_of(ue);
    out.push_back(req);

    t += arrivals.exponential(lambda_total);
  }
  return out;
}

namespace {

/// Per-request lifecycle bookkeeping alongside the event loop.
struct Progress {
  double admit_s = -1.0;
  double start_s = -1.0;
  std::uint32_t target = 0;
  double access_ms = 0.0;
  double backhaul_ms = 0.0;
  double switch_ms = 0.0;
};

/// Time-weighted busy-unit integrals clipped to the measured window.
class UtilizationTracker {
 public:
  UtilizationTracker(std::size_t n_nodes, double warmup_s, double duration_s)
      : integral_(n_nodes, 0.0), last_(n_nodes, 0.0), warmup_(warmup_s),
        duration_(duration_s) {}

  void before_change(std::uint32_t node, std::uint32_t busy, double now) {
    const double lo = std::clamp(last_[node], warmup_, duration_);
    const double hi = std::clamp(now, warmup_, duration_);
    if (hi > lo) integral_[node] += static_cast<double>(busy) * (hi - lo);
    last_[node] = now;
  }

  std::vector<double> finish(const SimState& state) {
    const double horizon = duration_ - warmup_;
    std::vector<double> util(integral_.size(), 0.0);
    for (std::uint32_t i = 0; i < integral_.size(); ++i) {
      before_change(i, state.node(i).busy, duration_);
      const auto cap = state.node(i).capacity;
      if (cap > 0 && horizon > 0.0) {
        util[i] = integral_[i] / (static_cast<double>(cap) * horizon);
      }
    }
    return util;
  }

 private:
  std::vector<double> integral_;
  std::vector<double> last_;
  double warmup_;
  double duration_;
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const geo::Topology& topo) {
  cfg.validate();
  const auto policy_kind = policy::parse_kind(cfg.policy);

  auto split = queueing::split_resources(cfg.resource_split, topo.ap_count());
  SimState state(topo, split, cfg.link, cfg.app);
  for (std::uint32_t i = 0; i < state.node_count(); ++i) {
    state.node(i).service_rate_mu = cfg.service_rate_mu;
  }
  if (!state.any_capacity()) {
    throw no_capacity_error("scenario: no compute capacity anywhere");
  }
  if (policy_kind == policy::Kind::cloud_only &&
      state.node(state.cloud_id()).capacity == 0) {
    throw no_capacity_error("scenario: cloud_only policy with zero cloud capacity");
  }

  const auto requests = generate_workload(cfg, topo);
  auto service_rng = rng::substream(cfg.seed, rng::Substream::service);

  EventQueue queue;
  for (const auto& req : requests) {
    queue.push(req.arrival_s, EventKind::arrival, req.req_id);
  }

  std::vector<Progress> progress(requests.size());
  UtilizationTracker util(state.node_count(), cfg.warmup_s, cfg.duration_s);
  std::vector<CompletionRecord> records;
  std::uint64_t measured_arrivals = 0;
  for (const auto& req : requests) {
    if (req.arrival_s >= cfg.warmup_s) ++measured_arrivals;
  }

  auto start_service = [&](std::uint64_t req_id, std::uint32_t node_id, double now) {
    progress[req_id].start_s = now;
    const double svc_s = queueing::sample_service_time(
        service_rng, state.node(node_id).service_rate_mu, cfg.app.demand_v);
    queue.push(now + svc_s, EventKind::complete, req_id, node_id);
  };

  while (!queue.empty() && queue.top().t <= cfg.duration_s) {
    const Event ev = queue.pop();
    switch (ev.kind) {
      case EventKind::arrival: {
        const auto& req = requests[ev.req];
        const auto assignment = policy::select(policy_kind, req, state, cfg.baseline_opt);
        auto& prog = progress[ev.req];
        prog.target = assignment.target;
        prog.access_ms = state.access_ms(req);
        if (state.is_cloud(assignment.target)) {
          prog.backhaul_ms = state.backhaul_ms(req);
        } else {
          prog.switch_ms = state.switch_ms(req, assignment.target);
        }
        const double net_ms = prog.access_ms + prog.backhaul_ms + prog.switch_ms;
        state.add_pending(assignment.target);
        queue.push(ev.t + net_ms / 1e3, EventKind::admit, ev.req, assignment.target);
        break;
      }
      case EventKind::admit: {
        auto& node = state.node(ev.node);
        state.remove_pending(ev.node);
        progress[ev.req].admit_s = ev.t;
        util.before_change(ev.node, node.busy, ev.t);
        if (queueing::node_admit(node, ev.req) == queueing::AdmitResult::started) {
          start_service(ev.req, ev.node, ev.t);
        }
        break;
      }
      case EventKind::complete: {
        auto& node = state.node(ev.node);
        const auto& req = requests[ev.req];
        const auto& prog = progress[ev.req];

        const double wait_ms = 1e3 * (prog.start_s - prog.admit_s);
        const double service_ms = 1e3 * (ev.t - prog.start_s);
        const double node_ms = wait_ms + service_ms;
        const auto breakdown =
            state.is_cloud(ev.node)
                ? latency::compose_cloud_latency(prog.access_ms, prog.backhaul_ms, node_ms)
                : latency::compose_edge_latency(prog.access_ms, prog.switch_ms, node_ms);

        if (req.arrival_s >= cfg.warmup_s) {
          CompletionRecord rec;
          rec.req_id = ev.req;
          rec.target = ev.node;
          rec.breakdown = breakdown;
          rec.queue_wait_ms = wait_ms;
          rec.service_ms = service_ms;
          rec.met_deadline = breakdown.total_ms <= cfg.app.threshold_ms;
          rec.completion_s = ev.t;
          records.push_back(rec);
        }

        util.before_change(ev.node, node.busy, ev.t);
        if (const auto next = queueing::node_release(node)) {
          start_service(*next, ev.node, ev.t);
        }
        break;
      }
    }
  }

  RunResult result;
  result.report = metrics::aggregate(records, measured_arrivals,
                                     cfg.duration_s - cfg.warmup_s, util.finish(state));
  result.records = std::move(records);
  return result;
}

RunResult run_scenario(const ScenarioConfig& cfg) {
  const auto topo = build_topology(cfg.topology);
  return run_scenario(cfg, topo);
}

}  // namespace edgecast::sim
