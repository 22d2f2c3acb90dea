#pragma once

#include <vector>

#include "lavatube/energy.hpp"
#include "lavatube/env.hpp"

namespace lavatube::thermal {

/// Glazed greenhouse dome; only the glazing conducts heat.
struct GlazedEnclosure {
  double glazed_area = 5.0;   // m^2
  double u_value = 1.1;       // W/(m^2 K), air-insulated double glazing
  double target_temp_c = 20.0;

  void validate() const;
};

/// Operating envelope of the avionics bay with a lumped heater: each 100 W
/// of heater power lifts the bay heater_delta_c above ambient.
struct AvionicsEnvelope {
  double min_ok_c = -40.0;
  double max_ok_c = 40.0;
  double heater_power_w = 0.0;
  double heater_delta_c = 10.0; // C per 100 W

  void validate() const;
  double heater_rise_c() const { return heater_power_w / 100.0 * heater_delta_c; }
};

struct Window {
  double start_s = 0.0;
  double end_s = 0.0;
};

struct EnvelopeCheck {
  bool ok = true;
  double worst_margin_c = 0.0; // negative when a bound is crossed
  double min_temp_c = 0.0;
  double max_temp_c = 0.0;
  std::vector<Window> violation_windows;
};

/// Steady conduction loss U A (target - outside), zero when outside is at or
/// above target.
double heat_loss(const GlazedEnclosure& enc, double outside_c);

/// Heating energy to hold target over one night at night_low_c [kWh].
double night_heating_energy(const GlazedEnclosure& enc, const MarsEnvironment& env);

/// Sweeps one sol of the diurnal profile at `sample_step_s`.
EnvelopeCheck avionics_envelope_check(const MarsEnvironment& env, const AvionicsEnvelope& envelope,
                                      bool heater_on, double sample_step_s = 60.0);

/// Greenhouse night heating as a power load spanning the night window.
energy::PowerLoad greenhouse_night_load(const GlazedEnclosure& enc, const MarsEnvironment& env,
                                        int priority = 2, bool sheddable = false);

} // namespace lavatube::thermal
