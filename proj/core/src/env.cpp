#include "lavatube/env.hpp"

#include <cmath>
#include <numbers>

#include "lavatube/errors.hpp"

namespace lavatube {

void MarsEnvironment::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(what);
  };
  require(std::isfinite(gravity) && gravity > 0.0, "gravity must be > 0");
  require(std::isfinite(ambient_density) && ambient_density > 0.0, "ambient_density must be > 0");
  require(surface_pressure > 0.0, "surface_pressure must be > 0");
  require(gas_constant > 0.0, "gas_constant must be > 0");
  require(ambient_temperature > 0.0, "ambient_temperature must be > 0");
  require(night_duration_s > 0.0, "night_duration_s must be > 0");
  require(sol_length_s > night_duration_s, "sol_length_s must exceed night_duration_s");
  require(day_high_c > night_low_c, "day_high_c must exceed night_low_c");
  require(dose_cave_msv >= 0.0, "dose_cave_msv must be >= 0");
  require(dose_surface_msv > dose_cave_msv, "dose_surface_msv must exceed dose_cave_msv");
}

MarsEnvironment environment_preset(std::string_view name) {
  MarsEnvironment env;
  if (name == "nili_fossae_default") return env;
  if (name == "cold_extreme") {
    env.night_low_c = -90.0;
    env.day_high_c = -20.0;
    return env;
  }
  if (name == "deep_cold") {
    env.night_low_c = -100.0;
    return env;
  }
  throw DomainError("unknown environment preset '" + std::string(name) + "'");
}

std::vector<std::string> environment_preset_names() {
  return {"cold_extreme", "deep_cold", "nili_fossae_default"};
}

double diurnal_temperature(const MarsEnvironment& env, double t) {
  if (!(t >= 0.0 && t < env.sol_length_s))
    throw DomainError("time_of_sol outside [0, sol_length_s)");
  if (t < env.night_duration_s) return env.night_low_c;
  const double phase = (t - env.night_duration_s) / env.day_duration_s();
  const double swing = env.day_high_c - env.night_low_c;
  return env.night_low_c + swing * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * phase));
}

double diurnal_peak_time(const MarsEnvironment& env) {
  return env.night_duration_s + 0.5 * env.day_duration_s();
}

double cumulative_dose(const MarsEnvironment& env, double cave_fraction, double periods) {
  if (!(cave_fraction >= 0.0 && cave_fraction <= 1.0))
    throw DomainError("cave_fraction outside [0, 1]");
  if (!(periods >= 0.0)) throw DomainError("periods must be >= 0");
  return periods * (cave_fraction * env.dose_cave_msv + (1.0 - cave_fraction) * env.dose_surface_msv);
}

} // namespace lavatube
