#include "edgecast/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace edgecast::sim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
  throw parse_error("config field '" + path + "': " + why);
}

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) bad_field(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) bad_field(path.empty() ? key : path + "." + key,
                                          "unknown field");
  }
}

double get_num(const json& j, const std::string& path, const char* key, double def) {
  if (!j.contains(key)) return def;
  const auto& v = j.at(key);
  if (!v.is_number()) bad_field(path + key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_u64(const json& j, const std::string& path, const char* key,
                      std::uint64_t def) {
  if (!j.contains(key)) return def;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    bad_field(path + key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_str(const json& j, const std::string& path, const char* key,
                    const std::string& def) {
  if (!j.contains(key)) return def;
  const auto& v = j.at(key);
  if (!v.is_string()) bad_field(path + key, "expected a string");
  return v.get<std::string>();
}

geo::BBox bbox_from_json(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 4) {
    bad_field(path, "expected [min_lat, min_lon, max_lat, max_lon]");
  }
  for (const auto& e : v) {
    if (!e.is_number()) bad_field(path, "expected numeric bounds");
  }
  return geo::BBox{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                   v[3].get<double>()};
}

TopologySpec topology_from_json(const json& j) {
  TopologySpec t;
  if (!j.is_object()) bad_field("topology", "expected an object");
  check_keys(j, "topology", {"csv", "synth", "grid_rows", "grid_cols", "cloud"});
  const bool has_csv = j.contains("csv");
  const bool has_synth = j.contains("synth");
  if (has_csv && has_synth) bad_field("topology", "give either 'csv' or 'synth', not both");

  if (has_csv) {
    t.use_csv = true;
    t.csv_path = get_str(j, "topology.", "csv", "");
    if (t.csv_path.empty()) bad_field("topology.csv", "expected a file path");
  } else if (has_synth) {
    const auto& s = j.at("synth");
    check_keys(s, "topology.synth", {"n", "bbox", "mode", "seed"});
    t.synth.n = static_cast<std::uint32_t>(get_u64(s, "topology.synth.", "n", t.synth.n));
    if (s.contains("bbox")) {
      const auto& b = s.at("bbox");
      if (b.is_string()) {
        const auto name = b.get<std::string>();
        if (name != "chicago") bad_field("topology.synth.bbox", "unknown preset '" + name + "'");
        t.synth.bbox_preset = name;
        t.synth.bbox = geo::kChicagoBBox;
      } else {
        t.synth.bbox_preset = "custom";
        t.synth.bbox = bbox_from_json(b, "topology.synth.bbox");
      }
    }
    const auto mode = get_str(s, "topology.synth.", "mode", "uniform");
    if (mode == "uniform") {
      t.synth.mode = geo::SynthMode::uniform;
    } else if (mode == "clustered") {
      t.synth.mode = geo::SynthMode::clustered;
    } else {
      bad_field("topology.synth.mode", "expected uniform|clustered");
    }
    t.synth.seed = get_u64(s, "topology.synth.", "seed", t.synth.seed);
  }

  t.grid_rows = static_cast<std::uint32_t>(get_u64(j, "topology.", "grid_rows", t.grid_rows));
  t.grid_cols = static_cast<std::uint32_t>(get_u64(j, "topology.", "grid_cols", t.grid_cols));
  if (j.contains("cloud")) {
    const auto& c = j.at("cloud");
    if (c.is_string()) {
      const auto name = c.get<std::string>();
      if (name != "oregon") bad_field("topology.cloud", "unknown preset '" + name + "'");
      t.cloud_preset = name;
      t.cloud = geo::kOregonDatacenter;
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      t.cloud_preset = "custom";
      t.cloud = geo::GeoPoint{c[0].get<double>(), c[1].get<double>()};
    } else {
      bad_field("topology.cloud", "expected \"oregon\" or [lat, lon]");
    }
  }
  return t;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(load >= 0.0) || !std::isfinite(load)) {
    throw invalid_input_error("config field 'load': must be finite and >= 0");
  }
  if (!(duration_s > 0.0)) throw invalid_input_error("config field 'duration_s': must be > 0");
  if (warmup_s < 0.0 || warmup_s >= duration_s) {
    throw invalid_input_error("config field 'warmup_s': need duration_s > warmup_s >= 0");
  }
  if (!(service_rate_mu > 0.0)) {
    throw invalid_input_error("config field 'service_rate_mu': must be > 0");
  }
  if (!(ue_radius_km >= 0.0)) {
    throw invalid_input_error("config field 'ue_radius_km': must be >= 0");
  }
  policy::parse_kind(policy);
  link.validate();
  app.validate();
  if (resource_split.cloud_fraction < 0.0 || resource_split.cloud_fraction > 1.0) {
    throw invalid_input_error("config field 'resource_split.cloud_fraction': must be in [0, 1]");
  }
}

namespace {

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig cfg;
  check_keys(j, "", {"schema_version", "topology", "resource_split", "link", "app",
                     "service_rate_mu", "load", "duration_s", "warmup_s", "policy",
                     "baseline", "ue_radius_km", "seed"});
  const auto version = get_u64(j, "", "schema_version", kConfigSchemaVersion);
  if (version != kConfigSchemaVersion) {
    bad_field("schema_version", "unsupported version " + std::to_string(version));
  }

  if (j.contains("topology")) cfg.topology = topology_from_json(j.at("topology"));

  if (j.contains("resource_split")) {
    const auto& r = j.at("resource_split");
    check_keys(r, "resource_split", {"total_units", "cloud_fraction"});
    cfg.resource_split.total_units =
        get_u64(r, "resource_split.", "total_units", cfg.resource_split.total_units);
    cfg.resource_split.cloud_fraction =
        get_num(r, "resource_split.", "cloud_fraction", cfg.resource_split.cloud_fraction);
  }

  bool link_payload_set = false;
  if (j.contains("link")) {
    const auto& l = j.at("link");
    check_keys(l, "link",
               {"alpha_ms_per_km", "delta_ms_per_km", "beta_ms_per_km", "wired_ms_per_km",
                "bw_ap_cloud_bps", "bw_interedge_bps", "payload_bits"});
    cfg.link.alpha_ms_per_km = get_num(l, "link.", "alpha_ms_per_km", cfg.link.alpha_ms_per_km);
    cfg.link.delta_ms_per_km = get_num(l, "link.", "delta_ms_per_km", cfg.link.delta_ms_per_km);
    cfg.link.beta_ms_per_km = get_num(l, "link.", "beta_ms_per_km", cfg.link.beta_ms_per_km);
    cfg.link.wired_ms_per_km = get_num(l, "link.", "wired_ms_per_km", cfg.link.wired_ms_per_km);
    cfg.link.bw_ap_cloud_bps = get_num(l, "link.", "bw_ap_cloud_bps", cfg.link.bw_ap_cloud_bps);
    cfg.link.bw_interedge_bps =
        get_num(l, "link.", "bw_interedge_bps", cfg.link.bw_interedge_bps);
    if (l.contains("payload_bits")) {
      cfg.link.payload_bits = get_num(l, "link.", "payload_bits", cfg.link.payload_bits);
      link_payload_set = true;
    }
  }

  bool app_payload_set = false;
  if (j.contains("app")) {
    const auto& a = j.at("app");
    check_keys(a, "app", {"demand_v", "threshold_ms", "payload_bits"});
    cfg.app.demand_v = get_num(a, "app.", "demand_v", cfg.app.demand_v);
    cfg.app.threshold_ms = get_num(a, "app.", "threshold_ms", cfg.app.threshold_ms);
    if (a.contains("payload_bits")) {
      cfg.app.payload_bits = get_num(a, "app.", "payload_bits", cfg.app.payload_bits);
      app_payload_set = true;
    }
  }
  // One payload per scenario: the app value is authoritative when given.
  if (app_payload_set || !link_payload_set) {
    cfg.link.payload_bits = cfg.app.payload_bits;
  } else {
    cfg.app.payload_bits = cfg.link.payload_bits;
  }

  cfg.service_rate_mu = get_num(j, "", "service_rate_mu", cfg.service_rate_mu);
  cfg.load = get_num(j, "", "load", cfg.load);
  cfg.duration_s = get_num(j, "", "duration_s", cfg.duration_s);
  cfg.warmup_s = get_num(j, "", "warmup_s", cfg.warmup_s);
  cfg.policy = get_str(j, "", "policy", cfg.policy);

  if (j.contains("baseline")) {
    const auto& b = j.at("baseline");
    check_keys(b, "baseline", {"scan_horizon", "fallback"});
    cfg.baseline_opt.scan_horizon =
        static_cast<std::uint32_t>(get_u64(b, "baseline.", "scan_horizon", 0));
    cfg.baseline_opt.fallback =
        policy::parse_fallback(get_str(b, "baseline.", "fallback", "least_loaded"));
  }

  cfg.ue_radius_km = get_num(j, "", "ue_radius_km", cfg.ue_radius_km);
  cfg.seed = get_u64(j, "", "seed", cfg.seed);

  cfg.validate();
  return cfg;
}

/// Applies a `--set key=value` dotted-path override onto a config document.
void apply_override(json& doc, const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw parse_error("override '" + key_eq_value + "': expected key=value");
  }
  const std::string path = key_eq_value.substr(0, eq);
  const std::string value = key_eq_value.substr(eq + 1);

  // The topology source is one-of; overriding one side replaces the other.
  if (path == "topology.csv" && doc.contains("topology")) {
    doc["topology"].erase("synth");
  } else if (path.starts_with("topology.synth") && doc.contains("topology")) {
    doc["topology"].erase("csv");
  }

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot - start);
    if (part.empty()) throw parse_error("override '" + key_eq_value + "': empty path segment");
    if (dot == std::string::npos) {
      // Typed leaf: integer, then float, then bool, then string.
      json leaf;
      long long ival = 0;
      auto [p1, e1] = std::from_chars(value.data(), value.data() + value.size(), ival);
      if (e1 == std::errc() && p1 == value.data() + value.size()) {
        leaf = ival;
      } else {
        double dval = 0.0;
        auto [p2, e2] = std::from_chars(value.data(), value.data() + value.size(), dval);
        if (e2 == std::errc() && p2 == value.data() + value.size()) {
          leaf = dval;
        } else if (value == "true" || value == "false") {
          leaf = (value == "true");
        } else {
          leaf = value;
        }
      }
      (*node)[part] = std::move(leaf);
      return;
    }
    if (!node->contains(part) || !(*node)[part].is_object()) {
      (*node)[part] = json::object();
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

ordered_json config_to_json(const ScenarioConfig& cfg) {
  ordered_json t;
  if (cfg.topology.use_csv) {
    t["csv"] = cfg.topology.csv_path;
  } else {
    ordered_json s;
    s["n"] = cfg.topology.synth.n;
    if (cfg.topology.synth.bbox_preset == "custom") {
      const auto& b = cfg.topology.synth.bbox;
      s["bbox"] = {b.min_lat, b.min_lon, b.max_lat, b.max_lon};
    } else {
      s["bbox"] = cfg.topology.synth.bbox_preset;
    }
    s["mode"] = cfg.topology.synth.mode == geo::SynthMode::uniform ? "uniform" : "clustered";
    s["seed"] = cfg.topology.synth.seed;
    t["synth"] = std::move(s);
  }
  t["grid_rows"] = cfg.topology.grid_rows;
  t["grid_cols"] = cfg.topology.grid_cols;
  if (cfg.topology.cloud_preset == "custom") {
    t["cloud"] = {cfg.topology.cloud.lat, cfg.topology.cloud.lon};
  } else {
    t["cloud"] = cfg.topology.cloud_preset;
  }

  ordered_json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["topology"] = std::move(t);
  j["resource_split"] = {{"total_units", cfg.resource_split.total_units},
                         {"cloud_fraction", cfg.resource_split.cloud_fraction}};
  j["link"] = {{"alpha_ms_per_km", cfg.link.alpha_ms_per_km},
               {"delta_ms_per_km", cfg.link.delta_ms_per_km},
               {"beta_ms_per_km", cfg.link.beta_ms_per_km},
               {"wired_ms_per_km", cfg.link.wired_ms_per_km},
               {"bw_ap_cloud_bps", cfg.link.bw_ap_cloud_bps},
               {"bw_interedge_bps", cfg.link.bw_interedge_bps},
               {"payload_bits", cfg.link.payload_bits}};
  j["app"] = {{"demand_v", cfg.app.demand_v},
              {"threshold_ms", cfg.app.threshold_ms},
              {"payload_bits", cfg.app.payload_bits}};
  j["service_rate_mu"] = cfg.service_rate_mu;
  j["load"] = cfg.load;
  j["duration_s"] = cfg.duration_s;
  j["warmup_s"] = cfg.warmup_s;
  j["policy"] = cfg.policy;
  j["baseline"] = {{"scan_horizon", cfg.baseline_opt.scan_horizon},
                   {"fallback", policy::fallback_name(cfg.baseline_opt.fallback)}};
  j["ue_radius_km"] = cfg.ue_radius_km;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ScenarioConfig load_config(const std::string& path,
                           const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw parse_error("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("config '" + path + "': invalid JSON: " + e.what());
  }
  for (const auto& kv : overrides) apply_override(j, kv);
  return config_from_json(j);
}

std::string config_to_json_text(const ScenarioConfig& cfg, int indent) {
  return config_to_json(cfg).dump(indent);
}

std::string report_to_json_text(const ScenarioConfig& cfg,
                                const metrics::MetricsReport& report, int indent) {
  ordered_json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["config"] = config_to_json(cfg);
  ordered_json m;
  m["arrivals"] = report.arrivals;
  m["completions"] = report.completions;
  m["deadline_hits"] = report.deadline_hits;
  m["unfinished"] = report.unfinished;
  m["delay_constraint_pct"] = report.delay_constraint_pct;
  m["goodput_rps"] = report.goodput_rps;
  m["mean_ms"] = report.mean_ms;
  m["p50_ms"] = report.p50_ms;
  m["p95_ms"] = report.p95_ms;
  m["p99_ms"] = report.p99_ms;
  m["mean_wait_ms"] = report.mean_wait_ms;
  m["mean_service_ms"] = report.mean_service_ms;
  m["measured_horizon_s"] = report.measured_horizon_s;
  j["metrics"] = std::move(m);
  j["node_utilization"] = report.node_utilization;
  return j.dump(indent) + "\n";
}

}  // namespace edgecast::sim
