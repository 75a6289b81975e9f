// End-to-end checks of the command-line surface: exit codes, report JSON,
// CSV determinism, topology generation and the oracle subcommand.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#ifndef EDGECAST_CLI_PATH
#error "EDGECAST_CLI_PATH must point at the edgecast binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CommandResult run_cli(const std::string& args, const std::string& env = "") {
  const auto dir = fs::temp_directory_path();
  const auto out_path = dir / "edgecast_cli_stdout.txt";
  const auto err_path = dir / "edgecast_cli_stderr.txt";
  const std::string cmd = (env.empty() ? "" : env + " ") + std::string(EDGECAST_CLI_PATH) +
                          " " + args + " >" + out_path.string() + " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& body) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

std::string slurp_file(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

const std::string kDemoConfig = R"({
  "topology": {"synth": {"n": 12, "seed": 3}},
  "resource_split": {"total_units": 6, "cloud_fraction": 0.5},
  "duration_s": 0.1,
  "warmup_s": 0.01,
  "load": 1.0
})";

}  // namespace

TEST_CASE("run: emits a report and echoes overrides in the config header") {
  const auto cfg = write_temp("edgecast_cli_demo.json", kDemoConfig);
  const auto plain = run_cli("run --config " + cfg.string());
  REQUIRE(plain.exit_code == 0);
  const auto doc = json::parse(plain.out);
  CHECK(doc.at("metrics").at("arrivals").get<std::uint64_t>() > 0);
  CHECK(doc.at("config").at("load").get<double>() == 1.0);

  const auto overridden =
      run_cli("run --config " + cfg.string() + " --set load=8 --set policy=econ");
  REQUIRE(overridden.exit_code == 0);
  const auto doc2 = json::parse(overridden.out);
  CHECK(doc2.at("config").at("load").get<double>() == 8.0);
  CHECK(doc2.at("config").at("policy").get<std::string>() == "econ");
  fs::remove(cfg);
}

TEST_CASE("run: missing config exits 2 with a diagnostic") {
  const auto r = run_cli("run --config /nonexistent/demo.json");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("run: bad config field exits 2 naming the field") {
  const auto cfg = write_temp("edgecast_cli_bad.json", R"({"lod": 3})");
  const auto r = run_cli("run --config " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("lod") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("run: --out writes the same report to a file") {
  const auto cfg = write_temp("edgecast_cli_demo2.json", kDemoConfig);
  const auto out = fs::temp_directory_path() / "edgecast_cli_report.json";
  const auto direct = run_cli("run --config " + cfg.string());
  const auto filed = run_cli("run --config " + cfg.string() + " --out " + out.string());
  REQUIRE(filed.exit_code == 0);
  CHECK(slurp_file(out) == direct.out);
  fs::remove(cfg);
  fs::remove(out);
}

TEST_CASE("gen-topology: deterministic CSV with the exact header") {
  const auto dir = fs::temp_directory_path();
  const auto out1 = dir / "edgecast_cli_aps1.csv";
  const auto out2 = dir / "edgecast_cli_aps2.csv";
  const auto r1 = run_cli("gen-topology -n 1100 --preset chicago --seed 1 --out " +
                          out1.string());
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run_cli("gen-topology -n 1100 --preset chicago --seed 1 --out " +
                          out2.string());
  REQUIRE(r2.exit_code == 0);

  const auto text = slurp_file(out1);
  CHECK(text == slurp_file(out2));
  CHECK(text.starts_with("ap_id,lat,lon\n"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 1101);  // header + 1100 rows

  const auto zero = run_cli("gen-topology -n 0 --out " + out1.string());
  CHECK(zero.exit_code != 0);
  fs::remove(out1);
  fs::remove(out2);
}

TEST_CASE("gen-topology: generated CSV feeds back into run") {
  const auto dir = fs::temp_directory_path();
  const auto aps = dir / "edgecast_cli_roundtrip.csv";
  REQUIRE(run_cli("gen-topology -n 30 --seed 9 --out " + aps.string()).exit_code == 0);

  const auto cfg = write_temp("edgecast_cli_csvcfg.json",
                              R"({"topology": {"csv": ")" + aps.string() + R"("},
                                  "resource_split": {"total_units": 10, "cloud_fraction": 0.5},
                                  "duration_s": 0.1, "warmup_s": 0.0})");
  const auto r = run_cli("run --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out).at("metrics").at("completions").get<std::uint64_t>() > 0);
  fs::remove(aps);
  fs::remove(cfg);
}

TEST_CASE("sweep: CSV outputs are byte-identical across reruns and --jobs") {
  const std::string spec_text = R"({
    "base": {"topology": {"synth": {"n": 10, "seed": 4}},
             "resource_split": {"total_units": 6, "cloud_fraction": 0.5},
             "duration_s": 0.08, "warmup_s": 0.01},
    "axes": {"load": [1, 4], "policy": ["baseline", "econ"]},
    "seeds": [1, 2]
  })";
  const auto spec = write_temp("edgecast_cli_sweep.json", spec_text);
  const auto dir = fs::temp_directory_path();
  const auto csv1 = dir / "edgecast_cli_rows1.csv";
  const auto csv2 = dir / "edgecast_cli_rows2.csv";

  const auto r1 = run_cli("sweep --spec " + spec.string() + " --jobs 1 --out " + csv1.string());
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run_cli("sweep --spec " + spec.string() + " --jobs 4 --out " + csv2.string());
  REQUIRE(r2.exit_code == 0);

  CHECK(slurp_file(csv1) == slurp_file(csv2));
  CHECK(fs::exists(dir / "edgecast_cli_rows1.agg.csv"));
  CHECK_FALSE(fs::exists(csv1.string() + ".partial"));

  const auto csv_text = slurp_file(csv1);
  const auto lines = std::count(csv_text.begin(), csv_text.end(), '\n');
  CHECK(lines == 1 + 2 * 2 * 2);  // header + loads x policies x seeds

  fs::remove(csv1);
  fs::remove(csv2);
  fs::remove(dir / "edgecast_cli_rows1.agg.csv");
  fs::remove(dir / "edgecast_cli_rows2.agg.csv");
  fs::remove(spec);
}

TEST_CASE("oracle: solves an instance file") {
  const auto inst = write_temp("edgecast_cli_oracle.json", R"({
    "nodes": [{"capacity": 1}, {"capacity": 1}],
    "requests": [
      {"threshold_ms": 10, "latency_ms": [5, 20]},
      {"threshold_ms": 10, "latency_ms": [5, 20]},
      {"threshold_ms": 30, "latency_ms": [5, 20]}
    ]
  })");
  const auto r = run_cli("oracle --instance " + inst.string());
  REQUIRE(r.exit_code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("max_assignable").get<int>() == 2);
  const auto witness = doc.at("assignment").get<std::vector<int>>();
  REQUIRE(witness.size() == 3);
  CHECK(witness[0] == 0);  // lexicographically smallest optimum
  fs::remove(inst);

  const auto missing = run_cli("oracle --instance /nonexistent/i.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("unknown subcommand fails") {
  CHECK(run_cli("explode").exit_code != 0);
}

TEST_CASE("EDGECAST_LOG enables stderr diagnostics") {
  const auto cfg = write_temp("edgecast_cli_log.json", kDemoConfig);
  const auto quiet = run_cli("run --config " + cfg.string() + " --out /dev/null");
  REQUIRE(quiet.exit_code == 0);
  CHECK(quiet.err.empty());

  const auto verbose =
      run_cli("run --config " + cfg.string() + " --out /dev/null", "EDGECAST_LOG=info");
  REQUIRE(verbose.exit_code == 0);
  CHECK(verbose.err.find("[edgecast]") != std::string::npos);
  fs::remove(cfg);
}
