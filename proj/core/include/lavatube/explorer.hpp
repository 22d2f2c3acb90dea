#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lavatube/energy.hpp"
#include "lavatube/env.hpp"
#include "lavatube/grid_map.hpp"

namespace lavatube::explore {

enum class RobotState { Exploring, Returning, Charging, Stuck };
std::string_view to_string(RobotState s);

inline constexpr int kMinModules = 2;
inline constexpr int kMaxModules = 5;
inline constexpr double kAuxCapacityKg = 6.0;
inline constexpr double kAuxCapacityLitres = 5.0;
inline constexpr double kScoutSpeedMps = 1.7;
inline constexpr double kSingleBatteryS = 5.0 * 3600.0;
inline constexpr double kDoubleBatteryS = 10.0 * 3600.0;

/// One sample per auxiliary module so samples never share a container.
struct Sample {
  double mass_kg = 0.0;
  CellPos origin;
  int module_slot = 0; // 1 .. module_count-1; slot 0 is the main module
};

struct RobotStats {
  std::size_t cells_moved = 0;
  std::size_t targets_reached = 0;
  std::size_t samples_collected = 0;
  std::size_t samples_delivered = 0;
  std::size_t charges = 0;
  double min_battery_s = 0.0;
};

/// Modular snake-like scout: one main module plus 1-4 auxiliary modules.
struct ScoutRobot {
  std::string id;
  int module_count = 3;
  double aux_capacity_kg = kAuxCapacityKg;
  double aux_capacity_l = kAuxCapacityLitres;
  double speed_mps = kScoutSpeedMps;
  double battery_full_s = kSingleBatteryS;
  double battery_s = kSingleBatteryS;
  CellPos position{-1, -1}; // off-map until deployed at the entrance
  std::vector<Sample> samples;
  RobotState state = RobotState::Exploring;
  std::optional<CellPos> target;
  // Capability metadata, checked against the scenario but not simulated.
  double max_obstacle_height_m = 0.4;
  double tested_drop_height_m = 1.5;
  RobotStats stats;

  int aux_slots() const noexcept { return module_count - 1; }
  /// Lowest free auxiliary slot, or nullopt when all are full.
  std::optional<int> free_slot() const;
  void validate() const;
};

ScoutRobot make_scout(std::string id, int module_count = 3, bool double_battery = false);

/// Stores a sample in the lowest free auxiliary slot. Throws OverMass above
/// the per-module capacity and CapacityExhausted when every slot is taken.
ScoutRobot collect_sample(ScoutRobot robot, double mass_kg, std::optional<CellPos> origin = std::nullopt);

/// Throws DomainError if the scenario demands more than the robot was
/// qualified for.
void check_capabilities(const ScoutRobot& robot, double required_drop_m, double required_obstacle_m);

/// Charging and analysis station lowered to the tube entrance.
struct Station {
  double charge_time_s = 3600.0;  // empty to full
  double reserve_factor = 1.2;    // return-trip safety factor
  int descents = 1;               // winch descents credited per run
  energy::WinchSpec winch;
  double sample_mass_kg = 1.0;
  int sample_every_targets = 3;   // collect at every n-th frontier reached; 0 disables

  void validate() const;
};

struct ExplorationState {
  GridMap map;
  std::vector<ScoutRobot> robots; // sorted by id
  std::size_t tick = 0;
  double tick_s = 0.0;            // resolution / slowest robot speed
  std::size_t reachable_cells = 0;
  std::vector<Sample> delivered;  // samples handed to the station

  double coverage() const {
    return static_cast<double>(map.explored_count()) / static_cast<double>(reachable_cells);
  }
};

/// Places robots without a valid position at the entrance, sorts them by id
/// and validates everything.
ExplorationState make_state(GridMap map, std::vector<ScoutRobot> robots);

/// A passable explored cell with at least one unexplored passable neighbour.
bool is_frontier(const GridMap& map, CellPos p);

/// Reserve below which a robot heading for `next` must turn home:
/// one tick for the move plus factor x the hop count home from `next`.
double return_reserve_s(double tick_s, double reserve_factor, int hops_home_from_next);

/// One tick. Robots act in id order; an Exploring robot senses its cell,
/// claims the nearest unclaimed frontier (BFS hops over the explored map,
/// ties by (row, col)), turns home when its battery is at or below the
/// return reserve, otherwise moves one cell along a shortest path. Robots
/// back at the entrance hand over samples and recharge.
ExplorationState step(ExplorationState state, const Station& station);

struct TickRecord {
  std::size_t tick = 0;
  double coverage = 0.0;
  std::size_t explored_cells = 0;
  std::vector<std::optional<CellPos>> claims;
  std::vector<CellPos> positions;
  std::vector<double> battery_s;
  std::vector<RobotState> states;
};

struct RobotReport {
  std::string id;
  RobotStats stats;
  RobotState final_state = RobotState::Exploring;
  CellPos final_position;
  double final_battery_s = 0.0;
  std::size_t samples_held = 0;
};

struct ExplorationReport {
  std::size_t steps = 0;
  double tick_s = 0.0;
  double elapsed_s = 0.0;
  double coverage_fraction = 0.0;
  bool completed = false;
  std::string outcome; // "complete", "max_steps", "stalled"
  std::size_t reachable_cells = 0;
  std::size_t explored_cells = 0;
  std::size_t samples_delivered = 0;
  double energy_regen_wh = 0.0;
  std::vector<RobotReport> per_robot;
  std::vector<std::uint8_t> explored_mask;
  std::vector<TickRecord> trace; // filled when requested; entry 0 is the initial state
};

ExplorationReport run_exploration(GridMap map, std::vector<ScoutRobot> robots, const Station& station,
                                  const MarsEnvironment& env, std::size_t max_steps,
                                  bool record_trace = false);

/// Per-tick trace as CSV: tick,robot,row,col,state,battery_s,target_row,target_col,coverage.
std::string trace_csv(const ExplorationReport& report);

} // namespace lavatube::explore
