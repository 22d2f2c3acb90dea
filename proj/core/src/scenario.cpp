#include "lavatube/scenario.hpp"

#include <algorithm>

namespace lavatube {

using mission::MissionEvent;
using mission::MissionPhase;

MissionConfig baseline_config() {
  MissionConfig cfg;

  auto& p = cfg.power;
  p.battery = {0.0, 0.0, 0.95, 0.95};
  energy::PowerSource rtg;
  rtg.name = "rtg";
  rtg.kind = energy::SourceKind::Constant;
  rtg.rating_w = 110.0;
  energy::PowerSource atmo;
  atmo.name = "atmospheric_electricity";
  atmo.kind = energy::SourceKind::Trickle;
  atmo.rating_w = 0.0;
  p.sources = {rtg, atmo};

  const double sol = cfg.env.env.sol_length_s;
  auto load = [](std::string name, double w, double start, double end, int prio, bool shed) {
    return energy::PowerLoad{std::move(name), w, start, end, prio, shed};
  };
  p.loads = {
      {load("avionics", 40.0, 0.0, sol, 0, false), {}},
      {load("tube_station", 25.0, 0.0, sol, 1, false), {MissionPhase::Settlement}},
      {load("farmbot", 287.0 / 24.0, 0.0, sol, 2, false), {MissionPhase::Settlement}},
      {load("mycotecture", 3.0, 0.0, sol, 3, false), {MissionPhase::Settlement}},
      {load("gas_chromatograph", 120.0, 60'000.0, 63'600.0, 4, true), {MissionPhase::Settlement}},
  };

  auto& ex = cfg.exploration;
  ex.generator = TubeGenerator{};
  for (const char* id : {"scout-1", "scout-2", "scout-3"}) ex.robots.push_back(explore::make_scout(id, 3, false));

  cfg.mission.script = {MissionEvent::DeploymentDone, MissionEvent::ArrivedAtTube,
                        MissionEvent::TubeSurveyComplete, MissionEvent::EndMission};
  return cfg;
}

std::vector<energy::PowerLoad> loads_for_phase(const MissionConfig& cfg, MissionPhase phase) {
  auto active_in = [phase](const std::vector<MissionPhase>& phases) {
    return phases.empty() || std::find(phases.begin(), phases.end(), phase) != phases.end();
  };
  std::vector<energy::PowerLoad> out;
  for (const auto& spec : cfg.power.loads)
    if (active_in(spec.phases)) out.push_back(spec.load);
  const auto& gh = cfg.power.greenhouse_heater;
  if (gh.enabled && active_in(gh.phases))
    out.push_back(thermal::greenhouse_night_load(cfg.enclosure, cfg.env.env, gh.priority, gh.sheddable));
  return out;
}

explore::GridMap tube_map(const ExplorationBlock& ex, std::uint64_t index) {
  if (ex.map) return *ex.map;
  const TubeGenerator gen = ex.generator.value_or(TubeGenerator{});
  return explore::generate_tube(gen.seed + index, gen.width, gen.height, gen.obstacle_density, ex.resolution_m);
}

void override_seeds(MissionConfig& cfg, std::uint64_t seed) {
  if (cfg.exploration.generator) cfg.exploration.generator->seed = seed;
  cfg.mission.germination.seed = seed;
}

} // namespace lavatube
