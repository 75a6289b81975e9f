#include "edgecast/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "edgecast/engine.hpp"

namespace edgecast::sweep {

using nlohmann::json;

std::uint64_t SweepSpec::point_count() const {
  auto dim = [](std::size_t n) -> std::uint64_t { return n == 0 ? 1 : n; };
  return dim(load.size()) * dim(cloud_fraction.size()) * dim(bw_interedge.size()) *
         dim(bw_ap_cloud.size()) * dim(policy.size()) * dim(seeds.size());
}

namespace {

std::vector<double> num_axis(const json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const auto& a = j.at(key);
  if (!a.is_array()) throw parse_error(std::string("sweep axis '") + key + "': expected an array");
  for (const auto& v : a) {
    if (!v.is_number()) throw parse_error(std::string("sweep axis '") + key + "': expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

namespace {

SweepSpec sweep_from_json(const json& j, const std::string& spec_dir) {
  if (!j.is_object()) throw parse_error("sweep: expected an object");
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> allowed{"schema_version", "base", "axes",
                                               "seeds", "max_points"};
    if (!allowed.contains(key)) throw parse_error("sweep field '" + key + "': unknown field");
  }
  SweepSpec spec;
  if (!j.contains("base")) throw parse_error("sweep field 'base': required");
  const auto& base = j.at("base");
  if (base.is_string()) {
    auto path = std::filesystem::path(base.get<std::string>());
    if (path.is_relative() && !spec_dir.empty()) {
      path = std::filesystem::path(spec_dir) / path;
    }
    spec.base = sim::load_config(path.string());
  } else {
    spec.base = sim::config_from_json_text(base.dump());
  }

  if (j.contains("axes")) {
    const auto& axes = j.at("axes");
    for (const auto& [key, _] : axes.items()) {
      static const std::set<std::string> allowed{"load", "cloud_fraction", "bw_interedge",
                                                 "bw_ap_cloud", "policy"};
      if (!allowed.contains(key)) throw parse_error("sweep axis '" + key + "': unknown axis");
    }
    spec.load = num_axis(axes, "load");
    spec.cloud_fraction = num_axis(axes, "cloud_fraction");
    spec.bw_interedge = num_axis(axes, "bw_interedge");
    spec.bw_ap_cloud = num_axis(axes, "bw_ap_cloud");
    if (axes.contains("policy")) {
      const auto& pol = axes.at("policy");
      if (!pol.is_array()) throw parse_error("sweep axis 'policy': expected an array");
      for (const auto& v : pol) {
        if (!v.is_string()) throw parse_error("sweep axis 'policy': expected strings");
        policy::parse_kind(v.get<std::string>());
        spec.policy.push_back(v.get<std::string>());
      }
    }
  }
  if (j.contains("seeds")) {
    const auto& seeds = j.at("seeds");
    if (!seeds.is_array()) throw parse_error("sweep field 'seeds': expected an array");
    for (const auto& v : seeds) {
      if (!v.is_number_unsigned() && !v.is_number_integer()) {
        throw parse_error("sweep field 'seeds': expected integers");
      }
      spec.seeds.push_back(v.get<std::uint64_t>());
    }
  }
  if (j.contains("max_points")) spec.max_points = j.at("max_points").get<std::uint64_t>();
  return spec;
}

}  // namespace

SweepSpec sweep_from_json_text(const std::string& text, const std::string& spec_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("sweep: invalid JSON: ") + e.what());
  }
  return sweep_from_json(j, spec_dir);
}

SweepSpec load_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("sweep: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("sweep '" + path + "': invalid JSON: " + e.what());
  }
  return sweep_from_json(j, std::filesystem::path(path).parent_path().string());
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs) {
  if (spec.point_count() > spec.max_points) {
    throw invalid_input_error("sweep: cartesian product has " +
                              std::to_string(spec.point_count()) +
                              " runs, over the cap of " + std::to_string(spec.max_points));
  }

  auto one_or = [](auto values, auto base) {
    if (values.empty()) values.push_back(base);
    return values;
  };
  const auto loads = one_or(spec.load, spec.base.load);
  const auto fracs = one_or(spec.cloud_fraction, spec.base.resource_split.cloud_fraction);
  const auto bw_ie = one_or(spec.bw_interedge, spec.base.link.bw_interedge_bps);
  const auto bw_ac = one_or(spec.bw_ap_cloud, spec.base.link.bw_ap_cloud_bps);
  const auto policies = one_or(spec.policy, spec.base.policy);
  const auto seeds = one_or(spec.seeds, spec.base.seed);

  struct Task {
    sim::ScenarioConfig cfg;
    SweepRow row;
  };
  std::vector<Task> tasks;
  tasks.reserve(spec.point_count());
  for (const double load : loads) {
    for (const double frac : fracs) {
      for (const double ie : bw_ie) {
        for (const double ac : bw_ac) {
          for (const auto& pol : policies) {
            for (const auto seed : seeds) {
              Task t;
              t.cfg = spec.base;
              t.cfg.load = load;
              t.cfg.resource_split.cloud_fraction = frac;
              t.cfg.link.bw_interedge_bps = ie;
              t.cfg.link.bw_ap_cloud_bps = ac;
              t.cfg.policy = pol;
              t.cfg.seed = seed;
              t.cfg.validate();
              t.row = SweepRow{load, frac, ie, ac, pol, seed, 0, 0, 0, 0, 0};
              tasks.push_back(std::move(t));
            }
          }
        }
      }
    }
  }

  // All points share one immutable topology.
  const auto topo = sim::build_topology(spec.base.topology);

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, tasks.empty() ? 1 : static_cast<unsigned>(tasks.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const auto result = sim::run_scenario(tasks[i].cfg, topo);
        auto& row = tasks[i].row;
        row.delay_constraint_pct = result.report.delay_constraint_pct;
        row.goodput_rps = result.report.goodput_rps;
        row.mean_ms = result.report.mean_ms;
        row.p95_ms = result.report.p95_ms;
        row.p99_ms = result.report.p99_ms;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::vector<SweepRow> rows;
  rows.reserve(tasks.size());
  for (auto& t : tasks) rows.push_back(std::move(t.row));
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

namespace {

class AtomicCsvFile {
 public:
  explicit AtomicCsvFile(const std::string& path)
      : final_path_(path), partial_path_(path + ".partial"), out_(partial_path_) {
    if (!out_) throw error("csv: cannot open '" + partial_path_ + "' for writing");
  }

  std::ofstream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) throw error("csv: write to '" + partial_path_ + "' failed");
    out_.close();
    std::filesystem::rename(partial_path_, final_path_);
  }

 private:
  std::string final_path_;
  std::string partial_path_;
  std::ofstream out_;
};

}  // namespace

void write_rows_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  AtomicCsvFile file(path);
  auto& out = file.stream();
  out << "load,cloud_fraction,bw_interedge,bw_ap_cloud,policy,seed,"
         "delay_constraint_pct,goodput_rps,mean_ms,p95_ms,p99_ms\n";
  for (const auto& r : rows) {
    out << format_double(r.load) << ',' << format_double(r.cloud_fraction) << ','
        << format_double(r.bw_interedge) << ',' << format_double(r.bw_ap_cloud) << ','
        << r.policy << ',' << r.seed << ',' << format_double(r.delay_constraint_pct)
        << ',' << format_double(r.goodput_rps) << ',' << format_double(r.mean_ms) << ','
        << format_double(r.p95_ms) << ',' << format_double(r.p99_ms) << '\n';
  }
  file.commit();
}

void write_aggregate_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  struct Agg {
    SweepRow key;
    std::uint64_t n = 0;
    double dc_sum = 0, dc_min = 0, dc_max = 0;
    double gp_sum = 0, gp_min = 0, gp_max = 0;
    double mean_sum = 0, p95_sum = 0, p99_sum = 0;
  };
  // Rows arrive grouped by point (seeds innermost), so aggregation is a
  // single ordered pass.
  std::vector<Agg> aggs;
  auto same_point = [](const SweepRow& a, const SweepRow& b) {
    return a.load == b.load && a.cloud_fraction == b.cloud_fraction &&
           a.bw_interedge == b.bw_interedge && a.bw_ap_cloud == b.bw_ap_cloud &&
           a.policy == b.policy;
  };
  for (const auto& r : rows) {
    if (aggs.empty() || !same_point(aggs.back().key, r)) {
      Agg a;
      a.key = r;
      a.dc_min = a.dc_max = r.delay_constraint_pct;
      a.gp_min = a.gp_max = r.goodput_rps;
      aggs.push_back(a);
    }
    auto& a = aggs.back();
    ++a.n;
    a.dc_sum += r.delay_constraint_pct;
    a.dc_min = std::min(a.dc_min, r.delay_constraint_pct);
    a.dc_max = std::max(a.dc_max, r.delay_constraint_pct);
    a.gp_sum += r.goodput_rps;
    a.gp_min = std::min(a.gp_min, r.goodput_rps);
    a.gp_max = std::max(a.gp_max, r.goodput_rps);
    a.mean_sum += r.mean_ms;
    a.p95_sum += r.p95_ms;
    a.p99_sum += r.p99_ms;
  }

  AtomicCsvFile file(path);
  auto& out = file.stream();
  out << "load,cloud_fraction,bw_interedge,bw_ap_cloud,policy,n_seeds,"
         "delay_constraint_pct_mean,delay_constraint_pct_min,delay_constraint_pct_max,"
         "goodput_rps_mean,goodput_rps_min,goodput_rps_max,"
         "mean_ms_mean,p95_ms_mean,p99_ms_mean\n";
  for (const auto& a : aggs) {
    const auto n = static_cast<double>(a.n);
    out << format_double(a.key.load) << ',' << format_double(a.key.cloud_fraction) << ','
        << format_double(a.key.bw_interedge) << ',' << format_double(a.key.bw_ap_cloud)
        << ',' << a.key.policy << ',' << a.n << ',' << format_double(a.dc_sum / n) << ','
        << format_double(a.dc_min) << ',' << format_double(a.dc_max) << ','
        << format_double(a.gp_sum / n) << ',' << format_double(a.gp_min) << ','
        << format_double(a.gp_max) << ',' << format_double(a.mean_sum / n) << ','
        << format_double(a.p95_sum / n) << ',' << format_double(a.p99_sum / n) << '\n';
  }
  file.commit();
}

}  // namespace edgecast::sweep
