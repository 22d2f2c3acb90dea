#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lavatube/config.hpp"
#include "lavatube/errors.hpp"
#include "lavatube/runner.hpp"

using namespace lavatube;
using nlohmann::json;

namespace {
const std::filesystem::path kScenarios = LAVATUBE_SCENARIO_DIR;

json report(std::string_view sub, const MissionConfig& cfg, RunOptions opts = {}) {
  return json::parse(run(sub, cfg, opts).report_json);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_finding(const json& rep, std::string_view cls, std::string_view module) {
  for (const auto& f : rep["findings"])
    if (f["class"] == cls && f["module"] == module) return true;
  return false;
}
} // namespace

TEST_CASE("cost on the baseline reports the programme total") {
  const auto rep = report("cost", baseline_config());
  CHECK(rep["program"]["cost"]["total_usd"] == 181417003);
  CHECK(rep["program"]["fte"]["total"] == 1320000);
  CHECK(rep["subcommand"] == "cost");
  CHECK(rep["tool"]["name"] == "lavatube");
  CHECK(rep.contains("config"));
}

TEST_CASE("strict power run on the baseline exits 1 with an infeasibility finding") {
  RunOptions strict;
  strict.strict = true;
  const auto res = run("power", baseline_config(), strict);
  CHECK(res.exit_code == 1);
  CHECK(any_of_class(res.findings, FindingClass::Infeasible));
  const auto rep = json::parse(res.report_json);
  CHECK_FALSE(rep["energy"]["violations"].empty());
  CHECK(rep["energy"]["simulation"]["hard_violation_span_s"][0] == 0.0);
  CHECK(rep["energy"]["simulation"]["hard_violation_span_s"][1] == 44400.0);
  CHECK(res.csv_files.count("soc_trace.csv") == 1);
  CHECK(run("power", baseline_config(), {}).exit_code == 0);
}

TEST_CASE("balloon findings depend on the area model") {
  auto cfg = baseline_config();
  auto rep = report("balloon", cfg);
  CHECK(rep["aerostat"]["buoyancy"]["buoyant"] == true);
  CHECK_FALSE(has_finding(rep, "discrepancy_vs_paper", "aerostat"));
  CHECK(has_finding(rep, "discrepancy_vs_paper", "env")); // 0.02 vs ideal CO2
  cfg.balloon.config.area_model = aerostat::AreaModel::FullWetted;
  rep = report("balloon", cfg);
  CHECK(rep["aerostat"]["buoyancy"]["buoyant"] == false);
  CHECK(has_finding(rep, "discrepancy_vs_paper", "aerostat"));
}

TEST_CASE("subcommands only emit their own module sections") {
  const auto cfg = baseline_config();
  CHECK(report("winch", cfg).contains("energy"));
  CHECK_FALSE(report("winch", cfg).contains("exploration"));
  CHECK(report("thermal", cfg).contains("thermal"));
  CHECK(report("explore", cfg).contains("exploration"));
  CHECK(report("budget", cfg)["program"]["budget"]["total_mass_kg"] == 277.0);
  CHECK(report("schedule", cfg)["program"]["schedule"]["ok"] == true);
  const auto full = report("mission", cfg);
  for (const char* key : {"env", "aerostat", "energy", "thermal", "exploration", "program", "mission", "findings"})
    CHECK(full.contains(key));
  CHECK_THROWS_AS(run("teleport", cfg, {}), DomainError);
}

TEST_CASE("schedule violations become limit findings") {
  auto cfg = baseline_config();
  cfg.program.launch_year = 2034;
  const auto rep = report("schedule", cfg);
  CHECK(has_finding(rep, "limit_violation", "program"));
}

TEST_CASE("mission reports are byte-identical for the same seed, and --seed overrides config seeds") {
  const auto cfg = load_config(kScenarios / "two_tube_mission.json");
  RunOptions a;
  a.seed = 99;
  const auto r1 = run("mission", cfg, a).report_json;
  const auto r2 = run("mission", cfg, a).report_json;
  CHECK(r1 == r2);
  const auto rep = json::parse(r1);
  CHECK(rep["seed"] == 99);
  CHECK(rep["config"]["exploration"]["generator"]["seed"] == 99);
  CHECK(rep["config"]["mission"]["germination"]["seed"] == 99);
  CHECK(rep["mission"]["final_state"]["tubes_explored"] == 2);
  RunOptions none;
  const auto plain = json::parse(run("mission", cfg, none).report_json);
  CHECK(plain["seed"].is_null());
  CHECK(plain["config"]["mission"]["germination"]["seed"] == 11);
}

TEST_CASE("report keys are serialized in sorted order") {
  const auto text = run("winch", baseline_config(), {}).report_json;
  CHECK(text.find("\"config\"") < text.find("\"energy\""));
  CHECK(text.find("\"energy\"") < text.find("\"findings\""));
  CHECK(text.find("\"subcommand\"") < text.find("\"tool\""));
}

TEST_CASE("run_to_dir writes the report and traces") {
  const auto out = std::filesystem::temp_directory_path() / "lavatube_runner_test";
  std::filesystem::remove_all(out);
  RunOptions csv;
  csv.format = OutputFormat::Csv;
  CHECK(run_to_dir("explore", kScenarios / "mapped_tube.json", out, csv) == 0);
  CHECK(std::filesystem::exists(out / "report.json"));
  const auto trace = slurp(out / "exploration_trace.csv");
  CHECK(trace.rfind("tick,robot,", 0) == 0);
  CHECK(run_to_dir("power", kScenarios / "paper_baseline.json", out, {}) == 0);
  CHECK(slurp(out / "soc_trace.csv").rfind("time_s,soc_wh,supply_w,demand_w,shed_w\n", 0) == 0);

  std::string err;
  CHECK(run_to_dir("power", kScenarios / "missing.json", out, {}, &err) == 2);
  CHECK_FALSE(err.empty());
  CHECK(run_to_dir("warp", kScenarios / "paper_baseline.json", out, {}, &err) == 2);
  // A regular file cannot serve as the output directory.
  CHECK(run_to_dir("cost", kScenarios / "paper_baseline.json", out / "report.json", {}, &err) == 2);
  std::filesystem::remove_all(out);
}

TEST_CASE("--wbs replaces the config WBS for cost") {
  const auto path = std::filesystem::temp_directory_path() / "lavatube_wbs_test.json";
  {
    std::ofstream f(path);
    f << R"({"name": "root", "level": 2, "children": [{"name": "a", "cost_usd": "$1,000"}]})";
  }
  RunOptions opts;
  opts.wbs_file = path;
  CHECK(report("cost", baseline_config(), opts)["program"]["cost"]["total_usd"] == 1000);
  std::filesystem::remove(path);
}
