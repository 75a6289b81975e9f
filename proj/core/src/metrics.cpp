#include "edgecast/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace edgecast::metrics {

double delay_constraint_pct(std::uint64_t deadline_hits, std::uint64_t arrivals) {
  if (arrivals == 0) {
    throw undefined_metric_error("delay_constraint_pct: zero arrivals");
  }
  return 100.0 * static_cast<double>(deadline_hits) / static_cast<double>(arrivals);
}

double goodput_rps(std::uint64_t deadline_hits, double horizon_s) {
  if (!(horizon_s > 0.0)) {
    throw invalid_input_error("goodput: horizon must be positive");
  }
  return static_cast<double>(deadline_hits) / horizon_s;
}

std::optional<double> goodput_ratio(const MetricsReport& econ,
                                    const MetricsReport& baseline) {
  if (!(baseline.goodput_rps > 0.0)) return std::nullopt;
  return econ.goodput_rps / baseline.goodput_rps;
}

double percentile_nearest_rank(std::span<const double> sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (!(p > 0.0) || p > 100.0) {
    throw invalid_input_error("percentile: p must be in (0, 100]");
  }
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

MetricsReport aggregate(std::span<const sim::CompletionRecord> records,
                        std::uint64_t arrivals, double horizon_s,
                        std::vector<double> node_utilization) {
  MetricsReport r;
  r.arrivals = arrivals;
  r.completions = records.size();
  r.measured_horizon_s = horizon_s;
  r.node_utilization = std::move(node_utilization);
  if (records.size() > arrivals) {
    throw invalid_input_error("aggregate: more completions than arrivals");
  }
  r.unfinished = arrivals - records.size();

  std::vector<double> totals;
  totals.reserve(records.size());
  double sum_total = 0.0, sum_wait = 0.0, sum_service = 0.0;
  for (const auto& rec : records) {
    if (rec.met_deadline) ++r.deadline_hits;
    totals.push_back(rec.breakdown.total_ms);
    sum_total += rec.breakdown.total_ms;
    sum_wait += rec.queue_wait_ms;
    sum_service += rec.service_ms;
  }
  if (arrivals > 0) r.delay_constraint_pct = delay_constraint_pct(r.deadline_hits, arrivals);
  r.goodput_rps = goodput_rps(r.deadline_hits, horizon_s);

  if (!totals.empty()) {
    std::sort(totals.begin(), totals.end());
    const auto n = static_cast<double>(totals.size());
    r.mean_ms = sum_total / n;
    r.mean_wait_ms = sum_wait / n;
    r.mean_service_ms = sum_service / n;
    r.p50_ms = percentile_nearest_rank(totals, 50.0);
    r.p95_ms = percentile_nearest_rank(totals, 95.0);
    r.p99_ms = percentile_nearest_rank(totals, 99.0);
  }
  return r;
}

}  // namespace edgecast::metrics
