#include "lavatube/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lavatube/errors.hpp"

namespace lavatube::explore {

std::string_view to_string(RobotState s) {
  switch (s) {
  case RobotState::Exploring: return "Exploring";
  case RobotState::Returning: return "Returning";
  case RobotState::Charging: return "Charging";
  case RobotState::Stuck: return "Stuck";
  }
  return "Exploring";
}

std::optional<int> ScoutRobot::free_slot() const {
  for (int slot = 1; slot <= aux_slots(); ++slot) {
    const bool taken = std::any_of(samples.begin(), samples.end(),
                                   [slot](const Sample& s) { return s.module_slot == slot; });
    if (!taken) return slot;
  }
  return std::nullopt;
}

void ScoutRobot::validate() const {
  if (module_count < kMinModules || module_count > kMaxModules)
    throw DomainError("robot '" + id + "': module_count must be in [2, 5]");
  if (!(speed_mps > 0.0)) throw DomainError("robot '" + id + "': speed must be > 0");
  if (!(battery_full_s > 0.0 && battery_s >= 0.0 && battery_s <= battery_full_s))
    throw DomainError("robot '" + id + "': battery must satisfy 0 <= battery <= full, full > 0");
  if (!(aux_capacity_kg >= 0.0 && aux_capacity_l >= 0.0))
    throw DomainError("robot '" + id + "': aux capacities must be >= 0");
  if (static_cast<int>(samples.size()) > aux_slots())
    throw InvariantViolation("robot '" + id + "' holds more samples than auxiliary modules");
  for (const auto& s : samples)
    if (s.mass_kg > aux_capacity_kg)
      throw InvariantViolation("robot '" + id + "' holds an over-mass sample");
}

ScoutRobot make_scout(std::string id, int module_count, bool double_battery) {
  ScoutRobot r;
  r.id = std::move(id);
  r.module_count = module_count;
  r.battery_full_s = double_battery ? kDoubleBatteryS : kSingleBatteryS;
  r.battery_s = r.battery_full_s;
  r.validate();
  return r;
}

ScoutRobot collect_sample(ScoutRobot robot, double mass_kg, std::optional<CellPos> origin) {
  if (!(mass_kg >= 0.0)) throw DomainError("sample mass must be >= 0");
  if (mass_kg > robot.aux_capacity_kg)
    throw OverMass("sample of " + std::to_string(mass_kg) + " kg exceeds module capacity");
  const auto slot = robot.free_slot();
  if (!slot) throw CapacityExhausted("robot '" + robot.id + "' has no free auxiliary module");
  robot.samples.push_back({mass_kg, origin.value_or(robot.position), *slot});
  ++robot.stats.samples_collected;
  return robot;
}

void check_capabilities(const ScoutRobot& robot, double required_drop_m, double required_obstacle_m) {
  if (required_drop_m > robot.tested_drop_height_m)
    throw DomainError("robot '" + robot.id + "': required drop height exceeds tested drop height");
  if (required_obstacle_m > robot.max_obstacle_height_m)
    throw DomainError("robot '" + robot.id + "': required obstacle height exceeds capability");
}

void Station::validate() const {
  if (!(charge_time_s >= 0.0)) throw DomainError("station charge_time_s must be >= 0");
  if (!(reserve_factor > 0.0)) throw DomainError("station reserve_factor must be > 0");
  if (descents < 0) throw DomainError("station descents must be >= 0");
  if (sample_every_targets < 0) throw DomainError("station sample_every_targets must be >= 0");
  if (!(sample_mass_kg >= 0.0)) throw DomainError("station sample_mass_kg must be >= 0");
  winch.validate();
}

ExplorationState make_state(GridMap map, std::vector<ScoutRobot> robots) {
  if (robots.empty()) throw DomainError("exploration needs at least one robot");
  std::sort(robots.begin(), robots.end(), [](const ScoutRobot& a, const ScoutRobot& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < robots.size(); ++i)
    if (robots[i].id == robots[i - 1].id) throw DomainError("duplicate robot id '" + robots[i].id + "'");

  double slowest = robots.front().speed_mps;
  for (auto& r : robots) {
    r.validate();
    if (!map.in_bounds(r.position)) r.position = map.entrance();
    r.stats.min_battery_s = r.battery_s;
    slowest = std::min(slowest, r.speed_mps);
  }
  ExplorationState st{std::move(map), std::move(robots), 0, 0.0, 0, {}};
  st.tick_s = st.map.resolution() / slowest;
  st.reachable_cells = reachable_cell_count(st.map);
  return st;
}

bool is_frontier(const GridMap& map, CellPos p) {
  if (!map.passable(p) || !map.explored(p)) return false;
  for (CellPos n : map.passable_neighbors(p))
    if (!map.explored(n)) return true;
  return false;
}

double return_reserve_s(double tick_s, double reserve_factor, int hops_home_from_next) {
  return tick_s * (1.0 + reserve_factor * static_cast<double>(hops_home_from_next));
}

namespace {

void sense(GridMap& map, CellPos p) {
  map.mark_explored(p);
  for (CellPos n : map.passable_neighbors(p)) map.mark_explored(n);
}

// Neighbour one hop closer to the BFS source, lowest (row, col) on ties.
CellPos downhill(const GridMap& map, const std::vector<int>& dist, CellPos from) {
  const int d = dist[map.index(from)];
  std::optional<CellPos> best;
  for (CellPos n : map.passable_neighbors(from)) {
    if (dist[map.index(n)] == d - 1 && (!best || n < *best)) best = n;
  }
  if (!best) throw InvariantViolation("no descending neighbour on a BFS distance field");
  return *best;
}

std::optional<CellPos> claim_target(const ExplorationState& st, std::size_t self) {
  const auto& map = st.map;
  const auto dist = bfs_distances(map, st.robots[self].position, true);
  std::optional<CellPos> best;
  int best_d = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (dist[i] == kUnreachable) continue;
    const CellPos p = map.pos(i);
    if (!is_frontier(map, p)) continue;
    bool claimed = false;
    for (std::size_t j = 0; j < st.robots.size(); ++j)
      if (j != self && st.robots[j].target == p) claimed = true;
    if (claimed) continue;
    // Row-major scan order already gives the (row, col) tie-break.
    if (!best || dist[i] < best_d) {
      best = p;
      best_d = dist[i];
    }
  }
  return best;
}

void arrive_home(ExplorationState& st, ScoutRobot& r) {
  r.state = RobotState::Charging;
  r.target.reset();
  ++r.stats.charges;
  r.stats.samples_delivered += r.samples.size();
  for (auto& s : r.samples) st.delivered.push_back(s);
  r.samples.clear();
}

void move_to(GridMap& map, ScoutRobot& r, CellPos next, double tick_s) {
  if (next != r.position) ++r.stats.cells_moved;
  r.position = next;
  r.battery_s = std::max(0.0, r.battery_s - tick_s);
  r.stats.min_battery_s = std::min(r.stats.min_battery_s, r.battery_s);
  sense(map, next);
}

void step_home(ExplorationState& st, ScoutRobot& r) {
  const CellPos home = st.map.entrance();
  if (r.position == home) {
    arrive_home(st, r);
    return;
  }
  const auto dist = bfs_distances(st.map, home, true);
  move_to(st.map, r, downhill(st.map, dist, r.position), st.tick_s);
  if (r.position == home) arrive_home(st, r);
}

void step_exploring(ExplorationState& st, std::size_t i, const Station& station) {
  auto& r = st.robots[i];
  auto& map = st.map;
  sense(map, r.position);

  if (r.target && !is_frontier(map, *r.target)) r.target.reset();
  if (!r.target) r.target = claim_target(st, i);

  CellPos next = r.position;
  if (r.target && *r.target != r.position) {
    const auto to_target = bfs_distances(map, *r.target, true);
    next = downhill(map, to_target, r.position);
  }

  const auto home_dist = bfs_distances(map, map.entrance(), true);
  const int hops = home_dist[map.index(next)];
  if (hops == kUnreachable) throw InvariantViolation("robot '" + r.id + "' planned a move off the known map");
  if (r.battery_s <= return_reserve_s(st.tick_s, station.reserve_factor, hops)) {
    r.state = RobotState::Returning;
    r.target.reset();
    step_home(st, r);
    return;
  }

  move_to(map, r, next, st.tick_s);
  if (r.target && r.position == *r.target) {
    ++r.stats.targets_reached;
    const auto n = static_cast<std::size_t>(station.sample_every_targets);
    if (n > 0 && r.stats.targets_reached % n == 0 && r.free_slot() &&
        station.sample_mass_kg <= r.aux_capacity_kg)
      r = collect_sample(std::move(r), station.sample_mass_kg);
  }
}

} // namespace

ExplorationState step(ExplorationState st, const Station& station) {
  for (const auto& r : st.robots) {
    if (!st.map.passable(r.position))
      throw InvariantViolation("robot '" + r.id + "' is not on a passable cell");
  }

  for (std::size_t i = 0; i < st.robots.size(); ++i) {
    auto& r = st.robots[i];
    switch (r.state) {
    case RobotState::Stuck:
      break;
    case RobotState::Charging: {
      const double rate = station.charge_time_s > 0.0 ? r.battery_full_s / station.charge_time_s : 0.0;
      r.battery_s = station.charge_time_s > 0.0 ? std::min(r.battery_full_s, r.battery_s + rate * st.tick_s)
                                                : r.battery_full_s;
      if (r.battery_s >= r.battery_full_s) r.state = RobotState::Exploring;
      break;
    }
    case RobotState::Returning:
      step_home(st, r);
      break;
    case RobotState::Exploring:
      step_exploring(st, i, station);
      break;
    }
    if (r.battery_s <= 0.0 && r.position != st.map.entrance() && r.state != RobotState::Charging) {
      r.state = RobotState::Stuck;
      r.target.reset();
    }
  }
  ++st.tick;
  return st;
}

namespace {

TickRecord snapshot(const ExplorationState& st) {
  TickRecord rec;
  rec.tick = st.tick;
  rec.coverage = st.coverage();
  rec.explored_cells = st.map.explored_count();
  for (const auto& r : st.robots) {
    rec.claims.push_back(r.target);
    rec.positions.push_back(r.position);
    rec.battery_s.push_back(r.battery_s);
    rec.states.push_back(r.state);
  }
  return rec;
}

} // namespace

ExplorationReport run_exploration(GridMap map, std::vector<ScoutRobot> robots, const Station& station,
                                  const MarsEnvironment& env, std::size_t max_steps, bool record_trace) {
  if (max_steps == 0) throw DomainError("max_steps must be > 0");
  station.validate();
  auto st = make_state(std::move(map), std::move(robots));

  ExplorationReport rep;
  rep.tick_s = st.tick_s;
  rep.reachable_cells = st.reachable_cells;
  if (record_trace) rep.trace.push_back(snapshot(st));

  rep.outcome = "max_steps";
  while (st.map.explored_count() < st.reachable_cells) {
    if (st.tick >= max_steps) break;
    const bool all_stuck = std::all_of(st.robots.begin(), st.robots.end(),
                                       [](const ScoutRobot& r) { return r.state == RobotState::Stuck; });
    if (all_stuck) {
      rep.outcome = "stalled";
      break;
    }
    st = step(std::move(st), station);
    if (record_trace) rep.trace.push_back(snapshot(st));
  }
  rep.completed = st.map.explored_count() == st.reachable_cells;
  if (rep.completed) rep.outcome = "complete";

  rep.steps = st.tick;
  rep.elapsed_s = static_cast<double>(st.tick) * st.tick_s;
  rep.coverage_fraction = st.coverage();
  rep.explored_cells = st.map.explored_count();
  rep.samples_delivered = st.delivered.size();
  rep.energy_regen_wh = static_cast<double>(station.descents) * energy::winch_regen_energy(station.winch, env);
  rep.explored_mask = st.map.explored_mask();
  for (const auto& r : st.robots)
    rep.per_robot.push_back({r.id, r.stats, r.state, r.position, r.battery_s, r.samples.size()});
  return rep;
}

std::string trace_csv(const ExplorationReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "tick,robot,row,col,state,battery_s,target_row,target_col,coverage\n";
  for (const auto& rec : report.trace) {
    for (std::size_t i = 0; i < rec.positions.size(); ++i) {
      out << rec.tick << ',' << report.per_robot[i].id << ',' << rec.positions[i].row << ','
          << rec.positions[i].col << ',' << to_string(rec.states[i]) << ',' << rec.battery_s[i] << ',';
      if (rec.claims[i])
        out << rec.claims[i]->row << ',' << rec.claims[i]->col;
      else
        out << ',';
      out << ',' << rec.coverage << '\n';
    }
  }
  return out.str();
}

} // namespace lavatube::explore
