#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lavatube/env.hpp"

namespace lavatube::energy {

struct WinchSpec {
  double payload_mass = 500.0;    // kg
  double line_speed = 0.4;        // m/s
  double depth = 100.0;           // m
  double motor_margin = 0.10;
  double regen_efficiency = 0.70; // motor acting as generator, round trip

  void validate() const;
};

struct WinchPower {
  double raw_kw = 0.0;
  double with_margin_kw = 0.0;
};

/// Steady hoisting power m g v, plus the sizing margin.
WinchPower winch_power(const WinchSpec& spec, const MarsEnvironment& env);

/// Energy recovered lowering the payload through `depth` [Wh].
double winch_regen_energy(const WinchSpec& spec, const MarsEnvironment& env);

enum class SourceKind { Constant, WindTurbine, WinchRegen, Trickle };
std::string_view to_string(SourceKind k);
SourceKind source_kind_from_string(std::string_view s);

struct PowerSource {
  std::string name;
  SourceKind kind = SourceKind::Constant;
  double rating_w = 0.0;                // Constant / Trickle
  double event_energy_wh = 0.0;         // WinchRegen: energy per event
  std::vector<double> event_times_s;    // WinchRegen: when descents happen
  // WindTurbine: steady wind, actuator-disc model at ambient density.
  double wind_speed_mps = 0.0;
  double swept_area_m2 = 0.0;
  double power_coefficient = 0.0;

  void validate() const;
};

struct PowerLoad {
  std::string name;
  double power_w = 0.0;
  double start_s = 0.0;
  double end_s = 0.0;
  int priority = 0; // lower = more critical
  bool sheddable = false;

  void validate(double sol_length_s) const;
};

struct Battery {
  double capacity_wh = 1000.0;
  double initial_soc_wh = 500.0;
  double charge_efficiency = 0.95;
  double discharge_efficiency = 0.95;

  void validate() const;
};

struct Violation {
  double time_s = 0.0;
  std::string load;
  double deficit_w = 0.0;
  bool sheddable = false;
};

struct SocSample {
  double time_s = 0.0;     // step start
  double duration_s = 0.0;
  double soc_wh = 0.0;     // at step end
  double supply_w = 0.0;   // step average
  double demand_w = 0.0;
  double shed_w = 0.0;
};

struct EnergyTotals {
  double supplied_wh = 0.0;
  double demanded_wh = 0.0;
  double charge_input_wh = 0.0;       // surplus offered to the battery
  double discharge_delivered_wh = 0.0;// energy the battery delivered to loads
  double clamp_loss_wh = 0.0;         // surplus refused by a full battery (stored units)
  double shed_wh = 0.0;
};

struct SocTrace {
  double timestep_s = 0.0;
  double capacity_wh = 0.0;
  double initial_soc_wh = 0.0;
  double final_soc_wh = 0.0;
  std::vector<SocSample> samples;
  std::vector<Violation> violations; // sorted by time
  EnergyTotals totals;

  bool has_hard_violation() const;
};

/// Average power of a source over [t0, t0 + dt).
double source_power(const PowerSource& src, const MarsEnvironment& env, double t0, double dt);

/// Explicit time stepping over one sol. The last step is shortened when the
/// timestep does not divide the sol. Deficits beyond what the battery can
/// supply curtail loads: sheddable ones first, least critical first, then
/// non-sheddable ones; every curtailment is a Violation.
SocTrace simulate_sol(const std::vector<PowerSource>& sources, const std::vector<PowerLoad>& loads,
                      const Battery& battery, const MarsEnvironment& env, double timestep_s = 60.0);

struct LoadVerdict {
  std::string name;
  int priority = 0;
  bool admitted = false;
  std::string reason;
};

struct Schedule {
  std::vector<PowerLoad> admitted;
  std::vector<LoadVerdict> verdicts; // admission order
  bool feasible = true;
};

/// Greedy admission in ascending priority (ties by name). A load stays in
/// the plan only if the plan still runs the sol without curtailing any
/// non-sheddable load.
Schedule schedule_loads(const std::vector<PowerSource>& sources, const std::vector<PowerLoad>& loads,
                        const Battery& battery, const MarsEnvironment& env,
                        double timestep_s = 60.0);

} // namespace lavatube::energy
