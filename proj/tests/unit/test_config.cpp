#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "lavatube/config.hpp"

using namespace lavatube;

namespace {
const std::filesystem::path kScenarios = LAVATUBE_SCENARIO_DIR;

ConfigError config_error(std::string_view text, const std::filesystem::path& base = {}) {
  try {
    parse_config(text, base);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError({});
}
} // namespace

TEST_CASE("shipped scenarios load clean") {
  for (const char* name : {"paper_baseline.json", "cold_extreme.json", "two_tube_mission.json", "mapped_tube.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_config(kScenarios / name));
  }
}

TEST_CASE("baseline fixture equals the built-in baseline") {
  const auto cfg = load_config(kScenarios / "paper_baseline.json");
  CHECK(config_echo(cfg) == config_echo(baseline_config()));
}

TEST_CASE("an empty object means the baseline") {
  CHECK(config_echo(parse_config("{}")) == config_echo(baseline_config()));
}

TEST_CASE("normalized echo is a fixed point of parsing") {
  for (const char* name : {"paper_baseline.json", "cold_extreme.json", "two_tube_mission.json", "mapped_tube.json"}) {
    CAPTURE(name);
    const auto echo = config_echo(load_config(kScenarios / name));
    CHECK(config_echo(parse_config(echo, kScenarios)) == echo);
  }
}

TEST_CASE("inverted balloon radii are reported at balloon.geometry") {
  const auto e = config_error(R"({"balloon": {"geometry": {"outer_radius": 3, "inner_radius": 7, "length": 6}}})");
  CHECK(e.mentions("balloon.geometry"));
}

TEST_CASE("map file and generator are mutually exclusive") {
  const auto e = config_error(
      R"({"exploration": {"map_file": "tube_20x20_seed42.map", "generator": {"seed": 1}}})", kScenarios);
  CHECK(e.mentions("exploration"));
  CHECK(std::string(e.what()).find("mutually exclusive") != std::string::npos);
}

TEST_CASE("every problem is reported, not just the first") {
  const auto e = config_error(R"({
    "bogus": 1,
    "winch": {"payload_mass": -5},
    "env": {"preset": "nili_fossae_default", "overrides": {"gravity": "high"}},
    "power": {"loads": [{"name": "x", "power_w": 10, "start_s": 5, "end_s": 1}]},
    "exploration": {"robots": [{"id": "a", "module_count": 9}]}
  })");
  CHECK(e.mentions("bogus"));
  CHECK(e.mentions("winch"));
  CHECK(e.mentions("env.overrides.gravity"));
  CHECK(e.mentions("power.loads[0]"));
  CHECK(e.mentions("exploration.robots[0]"));
  CHECK(e.issues().size() >= 5);
}

TEST_CASE("unknown keys anywhere are rejected") {
  CHECK(config_error(R"({"balloon": {"colour": "red"}})").mentions("balloon.colour"));
  CHECK(config_error(R"({"mission": {"germination": {"seeds": 4}}})").mentions("mission.germination.seeds"));
  CHECK(config_error(R"({"env": {"overrides": {"gravityy": 3.7}}})").mentions("env.overrides.gravityy"));
}

TEST_CASE("parse errors carry line and column") {
  const auto e = config_error("{\n  \"env\": {\n    \"preset\": ,\n  }\n}");
  const std::string msg = e.what();
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("missing files and bad map files are config errors") {
  CHECK_THROWS_AS(load_config(kScenarios / "does_not_exist.json"), ConfigError);
  const auto e = config_error(R"({"exploration": {"map_file": "nope.map"}})", kScenarios);
  CHECK(e.mentions("exploration.map_file"));
}

TEST_CASE("relative map paths resolve against the config directory") {
  const auto cfg = load_config(kScenarios / "mapped_tube.json");
  REQUIRE(cfg.exploration.map.has_value());
  CHECK(cfg.exploration.map->width() == 20);
  CHECK_FALSE(cfg.exploration.generator.has_value());
}

TEST_CASE("environment presets and overrides") {
  const auto cfg = parse_config(R"({"env": {"preset": "cold_extreme", "overrides": {"gravity": 3.7275}}})");
  CHECK(cfg.env.env.night_low_c == -90.0);
  CHECK(cfg.env.env.gravity == 3.7275);
  CHECK(config_error(R"({"env": {"preset": "titan"}})").mentions("env.preset"));
}

TEST_CASE("config dollar amounts accept strings") {
  const auto cfg = parse_config(R"({"program": {"wbs": {"name": "root", "level": 2, "children": [
      {"name": "a", "cost_usd": "$181.417.003"}, {"name": "b", "cost_usd": 7}]}}})");
  CHECK(program::rollup_cost(cfg.program.wbs) == 181'417'010);
  CHECK(config_error(R"({"program": {"wbs": {"name": "r", "children": [{"name": "a", "cost_usd": "1.5"}]}}})")
            .mentions("program.wbs.children[0].cost_usd"));
}

TEST_CASE("stand-alone WBS file") {
  const auto wbs = parse_wbs(R"({"name": "payloads", "level": 2, "children": [
      {"name": "mastcam", "level": 3, "children": [
        {"name": "sensor", "cost_usd": "$3,500"}, {"name": "lenses", "cost_usd": 50000},
        {"name": "other", "cost_usd": 40000}, {"name": "dev", "cost_usd": "$100.000"}]}]})");
  CHECK(program::rollup_cost(wbs) == 193'500);
  CHECK(wbs.children[0].children[0].level == 4);
  CHECK_THROWS_AS(parse_wbs(R"({"name": "x", "children": [{"name": "n", "cost_usd": -4}]})"), ConfigError);
}

TEST_CASE("robot battery option") {
  const auto cfg = parse_config(R"({"exploration": {"robots": [{"id": "s", "battery": "double", "module_count": 4}]}})");
  REQUIRE(cfg.exploration.robots.size() == 1);
  CHECK(cfg.exploration.robots[0].battery_full_s == 36000.0);
  CHECK(cfg.exploration.robots[0].module_count == 4);
  CHECK(config_error(R"({"exploration": {"robots": [{"id": "s", "battery": "triple"}]}})")
            .mentions("exploration.robots[0].battery"));
  CHECK(config_error(R"({"exploration": {"robots": []}})").mentions("exploration.robots"));
}

TEST_CASE("property: randomly corrupted numeric fields never slip through") {
  // Negative masses and lengths must always be caught before any model runs.
  std::mt19937_64 rng(41);
  const char* fields[] = {"tether_length", "tether_weight_per_length", "scientific_payload_weight",
                          "windmill_weight", "surface_area_weight", "lifting_gas_density"};
  for (int i = 0; i < 200; ++i) {
    const std::string field = fields[rng() % 6];
    const double v = -1.0 - static_cast<double>(rng() % 1000);
    const std::string text = R"({"balloon": {")" + field + "\": " + std::to_string(v) + "}}";
    CHECK(config_error(text).mentions("balloon"));
  }
}
