#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lavatube/aerostat.hpp"
#include "lavatube/energy.hpp"
#include "lavatube/env.hpp"
#include "lavatube/explorer.hpp"
#include "lavatube/grid_map.hpp"
#include "lavatube/mission_fsm.hpp"
#include "lavatube/program.hpp"
#include "lavatube/thermal.hpp"

namespace lavatube {

struct EnvBlock {
  std::string preset = "nili_fossae_default";
  std::map<std::string, double> overrides;
  MarsEnvironment env; // preset with overrides applied
};

struct BalloonBlock {
  aerostat::BalloonConfig config;
  /// Gas used for the ideal-gas cross-check of gas_density at ambient P, T.
  aerostat::LiftGas lift_gas = aerostat::oxygen();
};

struct AvionicsBlock {
  thermal::AvionicsEnvelope envelope;
  bool heater_on = false;
  double sample_step_s = 60.0;
};

/// A load and the mission phases in which it draws power (empty = all).
struct LoadSpec {
  energy::PowerLoad load;
  std::vector<mission::MissionPhase> phases;
};

struct GreenhouseHeaterSpec {
  bool enabled = true;
  int priority = 2;
  bool sheddable = false;
  std::vector<mission::MissionPhase> phases{mission::MissionPhase::Settlement};
};

struct PowerBlock {
  double timestep_s = 60.0;
  energy::Battery battery;
  std::vector<energy::PowerSource> sources;
  std::vector<LoadSpec> loads;
  GreenhouseHeaterSpec greenhouse_heater;
  /// Phase whose load set the stand-alone power run uses.
  mission::MissionPhase phase = mission::MissionPhase::Settlement;
};

struct TubeGenerator {
  std::uint64_t seed = 42;
  int width = 20;
  int height = 20;
  double obstacle_density = 0.2;
};

struct ExplorationBlock {
  std::optional<std::string> map_file;
  std::optional<explore::GridMap> map; // loaded from map_file
  std::optional<TubeGenerator> generator;
  double resolution_m = 1.0;
  std::vector<explore::ScoutRobot> robots;
  explore::Station station;
  std::size_t max_steps = 200'000;
  bool trace = false;
  double required_drop_height_m = 1.5;
  double required_obstacle_height_m = 0.4;
};

struct FteBlock {
  std::uint64_t people = 600;
  std::uint64_t years = 10;
  std::uint64_t fte_per_person_year = 220;
};

struct ProgramBlock {
  std::vector<program::PayloadSpec> payloads = program::default_payload_registry();
  program::BudgetLimits limits;
  double platform_mass_kg = 0.0;
  program::WbsNode wbs = program::default_wbs();
  std::vector<program::LifecyclePhase> phases = program::default_lifecycle();
  int launch_year = 2033;
  int deadline = 2033;
  FteBlock fte;
};

struct GerminationBlock {
  std::uint64_t n_seeds = 100;
  double p_germinate = 0.7;
  std::uint64_t seed = 7;
};

struct MissionBlock {
  std::vector<mission::MissionEvent> script;
  std::map<mission::MissionPhase, std::uint64_t> phase_sols{
      {mission::MissionPhase::Initial, 1},
      {mission::MissionPhase::Transit, 1},
      {mission::MissionPhase::Settlement, 1}};
  std::map<mission::MissionPhase, double> cave_fraction{
      {mission::MissionPhase::Initial, 0.0},
      {mission::MissionPhase::Transit, 0.0},
      {mission::MissionPhase::Settlement, 0.5}};
  GerminationBlock germination;
  double descent_time_s = 50'000.0; // when in the sol the winch lowers the station
};

/// One scenario: every model's inputs.
struct MissionConfig {
  EnvBlock env;
  BalloonBlock balloon;
  energy::WinchSpec winch;
  thermal::GlazedEnclosure enclosure;
  AvionicsBlock avionics;
  PowerBlock power;
  ExplorationBlock exploration;
  ProgramBlock program;
  MissionBlock mission;
};

/// Built-in baseline reproducing the design tables; equivalent to the
/// shipped scenarios/paper_baseline.json.
MissionConfig baseline_config();

/// Loads active in `phase`, with the greenhouse heater appended when enabled.
std::vector<energy::PowerLoad> loads_for_phase(const MissionConfig& cfg, mission::MissionPhase phase);

/// The map for tube `index`: the configured map file, or the generator
/// with seed + index.
explore::GridMap tube_map(const ExplorationBlock& ex, std::uint64_t index);

/// Applies --seed to every seeded subsystem.
void override_seeds(MissionConfig& cfg, std::uint64_t seed);

} // namespace lavatube
