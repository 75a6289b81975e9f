// Acceptance suite: end-to-end checks of the study-level claims, one
// PASS/FAIL line per criterion. Exit code is the number of failures.
//
// Usage: edgecast_acceptance [--configs DIR] [--only N]
// DIR holds the committed scenario calibrations (defaults to "configs/acceptance").

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edgecast/engine.hpp"
#include "edgecast/metrics.hpp"
#include "edgecast/policy.hpp"
#include "edgecast/queueing.hpp"
#include "edgecast/scenario.hpp"
#include "edgecast/sweep.hpp"
#include "../support/static_epoch.hpp"

namespace {

using namespace edgecast;

std::string g_config_dir = "configs/acceptance";

sim::ScenarioConfig load_committed(const std::string& name) {
  return sim::load_config((std::filesystem::path(g_config_dir) / name).string());
}

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

// Mean goodput ratio (econ/baseline) per load over paired seeds.
std::map<double, double> ratio_curve(const sim::ScenarioConfig& base,
                                     const std::vector<double>& loads,
                                     const std::vector<std::uint64_t>& seeds) {
  sweep::SweepSpec spec;
  spec.base = base;
  spec.load = loads;
  spec.policy = {"baseline", "econ"};
  spec.seeds = seeds;
  const auto rows = sweep::run_sweep(spec);

  std::map<std::tuple<double, std::string, std::uint64_t>, double> gp;
  for (const auto& r : rows) gp[{r.load, r.policy, r.seed}] = r.goodput_rps;
  std::map<double, double> out;
  for (const double load : loads) {
    double sum = 0.0;
    for (const auto seed : seeds) {
      const double b = gp[{load, "baseline", seed}];
      const double e = gp[{load, "econ", seed}];
      sum += b > 0.0 ? e / b : 0.0;
    }
    out[load] = sum / static_cast<double>(seeds.size());
  }
  return out;
}

std::map<double, double> delay_constraint_curve(const sim::ScenarioConfig& base,
                                                const std::vector<double>& loads,
                                                const std::vector<std::uint64_t>& seeds) {
  sweep::SweepSpec spec;
  spec.base = base;
  spec.load = loads;
  spec.seeds = seeds;
  const auto rows = sweep::run_sweep(spec);
  std::map<double, std::pair<double, int>> acc;
  for (const auto& r : rows) {
    acc[r.load].first += r.delay_constraint_pct;
    acc[r.load].second += 1;
  }
  std::map<double, double> out;
  for (const auto& [load, v] : acc) out[load] = v.first / v.second;
  return out;
}

std::string fmt(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

// --------------------------------------------------------------------------

/// Criterion 1: isolated node with zeroed links reproduces M/M/1 and M/M/4
/// mean queueing delay within 5% over 100k completions.
bool c1_queueing_fidelity(std::string& detail) {
  struct Case {
    std::uint32_t units;
    double lambda;
    double duration_s;
    double warmup_s;
  };
  // load = lambda / (units * mu) with mu = 1/s. Durations give ~1.7M
  // completions (well past the 100k floor), putting the 5% tolerance at
  // roughly five standard errors of the autocorrelated wait estimator.
  const std::vector<Case> cases{{1, 0.5, 3400000.0, 10000.0}, {4, 3.0, 570000.0, 1500.0}};
  bool ok = true;
  std::ostringstream os;
  for (const auto& c : cases) {
    sim::ScenarioConfig cfg;
    cfg.topology.synth.n = 1;
    cfg.topology.synth.seed = 2;
    cfg.resource_split = {c.units, 0.0};
    cfg.link.alpha_ms_per_km = 0.0;
    cfg.link.delta_ms_per_km = 0.0;
    cfg.service_rate_mu = 1.0;
    cfg.app.threshold_ms = 1e9;
    cfg.load = c.lambda / static_cast<double>(c.units);
    cfg.duration_s = c.duration_s;
    cfg.warmup_s = c.warmup_s;
    cfg.seed = 31;

    const auto result = sim::run_scenario(cfg);
    double wait_s = 0.0;
    for (const auto& rec : result.records) wait_s += rec.queue_wait_ms / 1e3;
    const double mean_wait = wait_s / static_cast<double>(result.records.size());
    const double analytic = queueing::mmc_mean_wait(c.units, c.lambda, 1.0);
    const double rel = std::abs(mean_wait - analytic) / analytic;
    os << "M/M/" << c.units << ": " << result.records.size() << " completions, W_q "
       << fmt(mean_wait) << "s vs analytic " << fmt(analytic) << "s (rel "
       << fmt(100.0 * rel, 2) << "%); ";
    ok = ok && result.records.size() >= 100000 && rel <= 0.05;
  }
  detail = os.str();
  return ok;
}

/// Criterion 2: the branch-and-bound oracle equals an independent
/// subset+max-flow enumeration on 200 random instances, and per-epoch policy
/// hits never exceed it.
bool c2_oracle_soundness(std::string& detail) {
  rng::Stream r(20240);
  int mismatches = 0;
  int policy_violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testsupport::random_instance(r, 10, 4);
    const auto got = policy::exact_oracle(inst).max_assignable;
    if (got != testsupport::FlowOracle(inst).max_assignable()) ++mismatches;
  }
  rng::Stream re(99991);
  for (int trial = 0; trial < 200; ++trial) {
    const auto e = testsupport::random_epoch(re, 3, 10);
    const auto inst = testsupport::snapshot_instance(e);
    const auto best = policy::exact_oracle(inst).max_assignable;
    if (testsupport::epoch_hits(policy::Kind::baseline, e, inst) > best) ++policy_violations;
    if (testsupport::epoch_hits(policy::Kind::econ, e, inst) > best) ++policy_violations;
  }
  detail = "200 instances vs subset+flow enumeration: " + std::to_string(mismatches) +
           " mismatches; 200 epochs: " + std::to_string(policy_violations) +
           " policy-over-oracle violations";
  return mismatches == 0 && policy_violations == 0;
}

/// Criterion 3: cloud-favored goodput ratio >= 1.0 at every load and >= 1.2
/// at load 8 under the committed calibration; the symmetric default
/// calibration's load-8 ratio is reported alongside.
bool c3_cloud_favored(std::string& detail) {
  const std::vector<double> loads{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  const auto calibrated = load_committed("c3_cloud_favored_calibrated.json");
  const auto curve = ratio_curve(calibrated, loads, seeds);

  // Report-both clause: the same sweep at the symmetric default calibration.
  sim::ScenarioConfig defaults = calibrated;
  defaults.baseline_opt = {};
  const auto default_curve = ratio_curve(defaults, loads, seeds);

  bool ok = true;
  double min_ratio = 1e9;
  std::ostringstream os;
  os << "calibrated ratios:";
  for (const double l : loads) {
    os << " " << fmt(curve.at(l), 2);
    min_ratio = std::min(min_ratio, curve.at(l));
    ok = ok && curve.at(l) >= 1.0;
  }
  ok = ok && curve.at(8.0) >= 1.2;
  os << " (min " << fmt(min_ratio, 3) << ", load8 " << fmt(curve.at(8.0), 3)
     << "); default-calibration ratios:";
  for (const double l : loads) os << " " << fmt(default_curve.at(l), 2);
  if (default_curve.at(8.0) < 1.2) {
    os << " (1.2 unmet at defaults; the committed calibration in configs/acceptance"
          " achieves it)";
  }
  detail = os.str();
  return ok;
}

/// Criterion 4: edge-favored resources with 10 Gbps inter-edge bandwidth put
/// the two policies within 1.0 +/- 0.05 at every load.
bool c4_edge_favored(std::string& detail) {
  const std::vector<double> loads{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const auto cfg = load_committed("c4_edge_favored.json");
  const auto curve = ratio_curve(cfg, loads, seeds);

  bool ok = true;
  double worst = 0.0;
  std::ostringstream os;
  os << "ratios:";
  for (const double l : loads) {
    os << " " << fmt(curve.at(l), 3);
    worst = std::max(worst, std::abs(curve.at(l) - 1.0));
    ok = ok && std::abs(curve.at(l) - 1.0) <= 0.05;
  }
  os << " (max deviation " << fmt(100.0 * worst, 1) << "%)";
  detail = os.str();
  return ok;
}

/// Criterion 5: a load exists at or above which the cloud-only system's
/// delay-constraint % strictly exceeds the edge-only system's (1 Gbps
/// inter-edge). The crossover load is reported, not asserted.
bool c5_crossover(std::string& detail) {
  const std::vector<double> loads{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  auto cloud_cfg = load_committed("c5_crossover_base.json");  // f = 1.0, cloud_only
  auto edge_cfg = cloud_cfg;
  edge_cfg.resource_split.cloud_fraction = 0.0;
  edge_cfg.policy = "baseline";

  const auto cloud = delay_constraint_curve(cloud_cfg, loads, seeds);
  const auto edge = delay_constraint_curve(edge_cfg, loads, seeds);

  std::optional<double> crossover;
  for (const double l : loads) {
    bool holds_from_here = true;
    for (const double m : loads) {
      if (m >= l && !(cloud.at(m) > edge.at(m))) holds_from_here = false;
    }
    if (holds_from_here) {
      crossover = l;
      break;
    }
  }

  std::ostringstream os;
  os << "cloud% vs edge%:";
  for (const double l : loads) {
    os << " " << fmt(cloud.at(l), 1) << "/" << fmt(edge.at(l), 1);
  }
  if (crossover) {
    os << "; cloud-only strictly ahead from load " << fmt(*crossover, 0)
       << " (calibration-dependent, reported not asserted)";
  } else {
    os << "; no crossover found";
  }
  detail = os.str();
  return crossover.has_value();
}

/// Criterion 6: redistributing the constant compute total toward the edges
/// while holding inter-edge bandwidth fixed reduces delay-constraint %.
bool c6_congestion_by_capacity(std::string& detail) {
  const auto a_cfg = load_committed("c6_cloud_favored.json");  // 20 edge units
  const auto b_cfg = load_committed("c6_edge_heavy.json");     // 38 edge units

  const auto a_split = queueing::split_resources(a_cfg.resource_split, 200);
  const auto b_split = queueing::split_resources(b_cfg.resource_split, 200);
  const auto edge_total = [](const queueing::SplitResult& s) {
    std::uint64_t n = 0;
    for (const auto u : s.edge_units) n += u;
    return n;
  };

  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  double a_pct = 0.0, b_pct = 0.0;
  for (const auto seed : seeds) {
    auto a = a_cfg;
    a.seed = seed;
    auto b = b_cfg;
    b.seed = seed;
    a_pct += sim::run_scenario(a).report.delay_constraint_pct;
    b_pct += sim::run_scenario(b).report.delay_constraint_pct;
  }
  a_pct /= seeds.size();
  b_pct /= seeds.size();

  const bool capacity_raised = edge_total(b_split) > edge_total(a_split) &&
                               a_split.total() == b_split.total();
  detail = std::to_string(edge_total(a_split)) + " edge units -> " +
           fmt(a_pct, 2) + "% vs " + std::to_string(edge_total(b_split)) +
           " edge units -> " + fmt(b_pct, 2) +
           "% (constant total, fixed bw_interedge)";
  return capacity_raised && a_pct > b_pct;
}

/// Criterion 7: byte-identical reports across reruns and byte-identical
/// sweep CSVs across reruns and worker counts.
bool c7_determinism(std::string& detail) {
  auto cfg = load_committed("c3_cloud_favored_calibrated.json");
  cfg.load = 3.0;
  cfg.seed = 9;
  const auto r1 = sim::run_scenario(cfg);
  const auto r2 = sim::run_scenario(cfg);
  const bool reports_equal = sim::report_to_json_text(cfg, r1.report) ==
                             sim::report_to_json_text(cfg, r2.report);

  sweep::SweepSpec spec;
  spec.base = cfg;
  spec.base.duration_s = 0.5;
  spec.base.warmup_s = 0.05;
  spec.load = {1, 4};
  spec.policy = {"baseline", "econ"};
  spec.seeds = {1, 2};

  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> texts;
  int run_idx = 0;
  for (const unsigned jobs : {1u, 2u, 4u}) {
    const auto path = dir / ("edgecast_acc_c7_" + std::to_string(run_idx++) + ".csv");
    sweep::write_rows_csv(path.string(), sweep::run_sweep(spec, jobs));
    std::ifstream in(path);
    texts.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    std::filesystem::remove(path);
  }
  const bool csv_equal = texts[0] == texts[1] && texts[1] == texts[2];
  detail = std::string("report rerun ") + (reports_equal ? "identical" : "DIFFERS") +
           "; sweep CSV across --jobs {1,2,4} " + (csv_equal ? "identical" : "DIFFERS");
  return reports_equal && csv_equal;
}

/// Criterion 8: the metric definitions are exact.
bool c8_metric_definitions(std::string& detail) {
  std::vector<sim::CompletionRecord> records;
  for (int i = 0; i < 90; ++i) {
    sim::CompletionRecord rec;
    rec.breakdown = latency::compose_edge_latency(0.0, 0.0, 20.0);  // over a 15 ms bound
    rec.met_deadline = rec.breakdown.total_ms <= 15.0;
    records.push_back(rec);
  }
  for (int i = 0; i < 10; ++i) {
    sim::CompletionRecord rec;
    rec.breakdown = latency::compose_edge_latency(0.0, 0.0, 10.0);
    rec.met_deadline = rec.breakdown.total_ms <= 15.0;
    records.push_back(rec);
  }
  const auto report = metrics::aggregate(records, 100, 1.0);
  const bool pct_exact = report.delay_constraint_pct == 10.0;

  const auto ratio = metrics::goodput_ratio(report, report);
  const bool ratio_exact = ratio.has_value() && *ratio == 1.0;
  detail = "delay_constraint_pct = " + fmt(report.delay_constraint_pct, 6) +
           " (exact), identical-report goodput ratio = " +
           (ratio ? fmt(*ratio, 6) : std::string("undefined"));
  return pct_exact && ratio_exact;
}

/// Criterion 9: Chicago preset to Oregon preset great-circle distance.
bool c9_geospatial(std::string& detail) {
  const double d = geo::haversine_km(geo::kChicagoCenter, geo::kOregonDatacenter);
  // Independent evaluation through the spherical law of cosines.
  const double d2r = 3.14159265358979323846 / 180.0;
  const double phi1 = geo::kChicagoCenter.lat * d2r;
  const double phi2 = geo::kOregonDatacenter.lat * d2r;
  const double dlam = (geo::kOregonDatacenter.lon - geo::kChicagoCenter.lon) * d2r;
  const double independent =
      geo::kEarthRadiusKm *
      std::acos(std::sin(phi1) * std::sin(phi2) + std::cos(phi1) * std::cos(phi2) *
                                                      std::cos(dlam));
  detail = "haversine " + fmt(d, 2) + " km, law-of-cosines " + fmt(independent, 2) + " km";
  return d >= 2600.0 && d <= 2800.0 && std::abs(d - independent) < 1.0;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--configs" && i + 1 < argc) {
      g_config_dir = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--configs DIR] [--only N]\n", argv[0]);
      return 64;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "queueing fidelity (M/M/1, M/M/4 vs analytic, 5%)", c1_queueing_fidelity},
      {2, "oracle soundness (enumeration + policy bound)", c2_oracle_soundness},
      {3, "ECON vs Baseline, cloud-favored (>=1.0 all loads, >=1.2 at 8)", c3_cloud_favored},
      {4, "ECON ~ Baseline, edge-favored (1.0 +/- 0.05)", c4_edge_favored},
      {5, "cloud/edge crossover exists", c5_crossover},
      {6, "congestion by capacity redistribution", c6_congestion_by_capacity},
      {7, "determinism (reports and sweep CSV)", c7_determinism},
      {8, "metric definitions exact", c8_metric_definitions},
      {9, "geospatial sanity (Chicago -> Oregon)", c9_geospatial},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const auto secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] C%d %s: %s [%.1fs]\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (only == 0) {
    std::printf("%s: %d/9 criteria passed\n", failures == 0 ? "OK" : "FAILED",
                9 - failures);
  }
  return failures;
}
