// edgecast command line: scenario execution, parameter sweeps, synthetic
// topology generation and the desk-scale exact assignment oracle.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgecast/engine.hpp"
#include "edgecast/policy.hpp"
#include "edgecast/scenario.hpp"
#include "edgecast/sweep.hpp"

namespace {

using nlohmann::json;

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("EDGECAST_LOG");
    if (env == nullptr) return 0;
    const std::string v(env);
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[edgecast] " << msg << '\n';
}

json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw edgecast::parse_error(std::string(what) + ": cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw edgecast::parse_error(std::string(what) + " '" + path + "': invalid JSON: " +
                                e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw edgecast::error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw edgecast::error("write to '" + path + "' failed");
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& out_path) {
  const auto cfg = edgecast::sim::load_config(config_path, overrides);
  log_info("running scenario from " + config_path);
  const auto result = edgecast::sim::run_scenario(cfg);
  const std::string text = edgecast::sim::report_to_json_text(cfg, result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path,
              std::string agg_path, unsigned jobs) {
  const auto spec = edgecast::sweep::load_sweep(spec_path);
  log_info("sweep: " + std::to_string(spec.point_count()) + " runs");
  const auto rows = edgecast::sweep::run_sweep(spec, jobs);
  edgecast::sweep::write_rows_csv(out_path, rows);
  if (agg_path.empty()) {
    auto p = std::filesystem::path(out_path);
    p.replace_extension(".agg.csv");
    agg_path = p.string();
  }
  edgecast::sweep::write_aggregate_csv(agg_path, rows);
  log_info("wrote " + out_path + " and " + agg_path);
  return 0;
}

int cmd_gen_topology(std::uint32_t n, const std::string& preset,
                     const std::vector<double>& bbox_vals, const std::string& mode,
                     std::uint64_t seed, const std::string& out_path) {
  edgecast::geo::BBox bbox = edgecast::geo::kChicagoBBox;
  if (!bbox_vals.empty()) {
    bbox = edgecast::geo::BBox{bbox_vals[0], bbox_vals[1], bbox_vals[2], bbox_vals[3]};
  } else if (preset != "chicago") {
    throw edgecast::invalid_input_error("gen-topology: unknown preset '" + preset + "'");
  }
  const auto synth_mode = mode == "clustered" ? edgecast::geo::SynthMode::clustered
                                              : edgecast::geo::SynthMode::uniform;
  const auto topo = edgecast::geo::synth_aps(n, bbox, synth_mode, seed);

  std::string text = "ap_id,lat,lon\n";
  for (std::size_t i = 0; i < topo.aps.size(); ++i) {
    text += std::to_string(i);
    text += ',';
    text += edgecast::sweep::format_double(topo.aps[i].lat);
    text += ',';
    text += edgecast::sweep::format_double(topo.aps[i].lon);
    text += '\n';
  }
  write_text(out_path, text);
  log_info("wrote " + std::to_string(topo.aps.size()) + " APs to " + out_path);
  return 0;
}

int cmd_oracle(const std::string& instance_path, const std::string& out_path) {
  const json j = read_json_file(instance_path, "oracle instance");
  edgecast::policy::OracleInstance inst;
  try {
    if (!j.contains("nodes") || !j.contains("requests")) {
      throw edgecast::parse_error("oracle instance: expected 'nodes' and 'requests'");
    }
    for (const auto& n : j.at("nodes")) {
      inst.nodes.push_back({n.at("capacity").get<std::uint32_t>()});
    }
    for (const auto& r : j.at("requests")) {
      edgecast::policy::OracleInstance::Req req;
      req.threshold_ms = r.at("threshold_ms").get<double>();
      for (const auto& v : r.at("latency_ms")) req.latency_ms.push_back(v.get<double>());
      inst.requests.push_back(std::move(req));
    }
  } catch (const json::exception& e) {
    throw edgecast::parse_error(std::string("oracle instance: ") + e.what());
  }

  const auto result = edgecast::policy::exact_oracle(inst);
  nlohmann::ordered_json out;
  out["max_assignable"] = result.max_assignable;
  out["assignment"] = result.assignment;
  const std::string text = out.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgecast: hybrid edge-cloud capacity simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one scenario and emit a report JSON");
  std::string run_config;
  std::vector<std::string> run_sets;
  std::string run_out;
  run->add_option("--config", run_config, "Scenario config JSON")->required();
  run->add_option("--set", run_sets, "Override config fields (dotted.path=value)");
  run->add_option("--out", run_out, "Write report here instead of stdout");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and emit CSV tables");
  std::string sweep_spec, sweep_out, sweep_agg;
  unsigned sweep_jobs = 0;
  sweep->add_option("--spec", sweep_spec, "Sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "Long-format CSV output path")->required();
  sweep->add_option("--agg-out", sweep_agg, "Aggregated CSV path (default: <out>.agg.csv)");
  sweep->add_option("--jobs", sweep_jobs, "Worker pool size (default: hardware)");

  // gen-topology
  auto* gen = app.add_subcommand("gen-topology", "Generate a synthetic AP CSV");
  std::uint32_t gen_n = 0;
  std::string gen_preset = "chicago", gen_mode = "uniform", gen_out;
  std::uint64_t gen_seed = 1;
  std::vector<double> gen_bbox;
  gen->add_option("-n,--n", gen_n, "Number of APs")->required()->check(CLI::PositiveNumber);
  gen->add_option("--preset", gen_preset, "Bounding box preset (chicago)");
  gen->add_option("--bbox", gen_bbox, "Custom bbox: min_lat min_lon max_lat max_lon")
      ->expected(4);
  gen->add_option("--mode", gen_mode, "uniform|clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}));
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Solve a small exact-assignment instance");
  std::string oracle_instance, oracle_out;
  oracle->add_option("--instance", oracle_instance, "Instance JSON")->required();
  oracle->add_option("--out", oracle_out, "Write result here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_config, run_sets, run_out);
    if (*sweep) return cmd_sweep(sweep_spec, sweep_out, sweep_agg, sweep_jobs);
    if (*gen) return cmd_gen_topology(gen_n, gen_preset, gen_bbox, gen_mode, gen_seed, gen_out);
    if (*oracle) return cmd_oracle(oracle_instance, oracle_out);
  } catch (const edgecast::error& e) {
    std::cerr << "edgecast: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "edgecast: internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
