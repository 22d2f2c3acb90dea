#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lavatube/energy.hpp"
#include "lavatube/explorer.hpp"
#include "lavatube/findings.hpp"
#include "lavatube/mission_fsm.hpp"
#include "lavatube/scenario.hpp"

namespace lavatube::mission {

struct EventRecord {
  std::uint64_t sol = 0; // sols elapsed when the event fired
  MissionEvent event = MissionEvent::EndMission;
  MissionPhase from = MissionPhase::Initial;
  MissionPhase to = MissionPhase::Initial;
  bool implicit = false; // EndMission appended because the script lacked one
};

struct SolRecord {
  std::uint64_t sol = 0;
  MissionPhase phase = MissionPhase::Initial;
  double cave_fraction = 0.0;
  double dose_msv = 0.0;
  double initial_soc_wh = 0.0;
  double final_soc_wh = 0.0;
  double shed_wh = 0.0;
  double regen_wh = 0.0; // winch descents fed into this sol's battery simulation
  std::size_t violations = 0;
  std::size_t hard_violations = 0;
};

struct MissionReport {
  MissionState final_state;
  std::vector<EventRecord> events;
  std::vector<MissionPhase> state_sequence; // Initial ... Complete
  std::vector<MissionPhase> phases_visited; // non-terminal phases in visiting order
  std::vector<SolRecord> sols;
  std::vector<explore::ExplorationReport> explorations;
  std::optional<GerminationTrial> germination;
  double total_dose_msv = 0.0;
  double regen_credited_wh = 0.0;
  std::uint64_t transit_to_settlement = 0;
  std::vector<Finding> findings;
};

/// Drives the phase machine through the scripted events, simulating each
/// sol's power balance and dose, surveying a tube on every
/// TubeSurveyComplete and running the greenhouse germination trial on first
/// settlement. Errors from a model are rethrown as ModuleError.
MissionReport run_mission(const MissionConfig& cfg);

} // namespace lavatube::mission
