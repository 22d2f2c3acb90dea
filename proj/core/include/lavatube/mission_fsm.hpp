#pragma once

#include <cstdint>
#include <string_view>

namespace lavatube::mission {

enum class MissionPhase { Initial, Transit, Settlement, Complete };
enum class MissionEvent { DeploymentDone, ArrivedAtTube, TubeSurveyComplete, RelocateToNextTube, EndMission };

std::string_view to_string(MissionPhase p);
std::string_view to_string(MissionEvent e);
MissionPhase mission_phase_from_string(std::string_view s);
MissionEvent mission_event_from_string(std::string_view s);

struct MissionState {
  MissionPhase phase = MissionPhase::Initial;
  std::uint64_t sol = 0;
  std::uint64_t tubes_explored = 0;

  bool operator==(const MissionState&) const = default;
};

/// Phase transitions of the surface mission. Transit and Settlement loop
/// so several tubes can be surveyed; EndMission is accepted from any phase.
/// Any other pairing throws IllegalTransition.
MissionState advance(MissionState state, MissionEvent event);

struct GerminationTrial {
  std::uint64_t n_seeds = 0;
  double p_germinate = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t germinated = 0;

  double rate() const { return n_seeds == 0 ? 0.0 : static_cast<double>(germinated) / static_cast<double>(n_seeds); }
};

/// n_seeds independent Bernoulli(p) draws on the germination stream.
GerminationTrial germination_trial(std::uint64_t n_seeds, double p, std::uint64_t seed);

} // namespace lavatube::mission
