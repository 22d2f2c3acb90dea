#include "lavatube/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lavatube/errors.hpp"

namespace lavatube::thermal {

void GlazedEnclosure::validate() const {
  if (!(glazed_area > 0.0)) throw DomainError("glazed_area must be > 0");
  if (!(u_value > 0.0)) throw DomainError("u_value must be > 0");
}

void AvionicsEnvelope::validate() const {
  if (!(min_ok_c < max_ok_c)) throw DomainError("min_ok_c must be below max_ok_c");
  if (!(heater_power_w >= 0.0 && heater_delta_c >= 0.0))
    throw DomainError("heater terms must be >= 0");
}

double heat_loss(const GlazedEnclosure& enc, double outside_c) {
  enc.validate();
  return enc.u_value * enc.glazed_area * std::max(0.0, enc.target_temp_c - outside_c);
}

double night_heating_energy(const GlazedEnclosure& enc, const MarsEnvironment& env) {
  if (!(env.night_duration_s >= 0.0)) throw DomainError("night_duration_s must be >= 0");
  return heat_loss(enc, env.night_low_c) * env.night_duration_s / 3.6e6;
}

EnvelopeCheck avionics_envelope_check(const MarsEnvironment& env, const AvionicsEnvelope& envelope,
                                      bool heater_on, double sample_step_s) {
  envelope.validate();
  if (!(sample_step_s > 0.0)) throw DomainError("sample step must be > 0");
  const double rise = heater_on ? envelope.heater_rise_c() : 0.0;

  EnvelopeCheck out;
  out.worst_margin_c = std::numeric_limits<double>::infinity();
  out.min_temp_c = std::numeric_limits<double>::infinity();
  out.max_temp_c = -std::numeric_limits<double>::infinity();

  auto sample = [&](double t, double next_t) {
    const double temp = diurnal_temperature(env, t) + rise;
    out.min_temp_c = std::min(out.min_temp_c, temp);
    out.max_temp_c = std::max(out.max_temp_c, temp);
    const double margin = std::min(temp - envelope.min_ok_c, envelope.max_ok_c - temp);
    out.worst_margin_c = std::min(out.worst_margin_c, margin);
    if (margin < 0.0) {
      out.ok = false;
      if (!out.violation_windows.empty() && out.violation_windows.back().end_s == t)
        out.violation_windows.back().end_s = next_t;
      else
        out.violation_windows.push_back({t, next_t});
    }
  };

  const auto n = static_cast<std::size_t>(std::ceil(env.sol_length_s / sample_step_s));
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * sample_step_s;
    if (t >= env.sol_length_s) break;
    sample(t, std::min(t + sample_step_s, env.sol_length_s));
  }
  // The day peak rarely lands on a grid point; fold it in explicitly.
  const double peak = diurnal_peak_time(env);
  const double peak_temp = diurnal_temperature(env, peak) + rise;
  out.max_temp_c = std::max(out.max_temp_c, peak_temp);
  const double peak_margin = std::min(peak_temp - envelope.min_ok_c, envelope.max_ok_c - peak_temp);
  out.worst_margin_c = std::min(out.worst_margin_c, peak_margin);
  if (peak_margin < 0.0 && out.ok) {
    out.ok = false;
    out.violation_windows.push_back({peak, peak});
  }
  return out;
}

energy::PowerLoad greenhouse_night_load(const GlazedEnclosure& enc, const MarsEnvironment& env,
                                         int priority, bool sheddable) {
  energy::PowerLoad load;
  load.name = "greenhouse_heater";
  load.power_w = heat_loss(enc, env.night_low_c);
  load.start_s = 0.0;
  load.end_s = env.night_duration_s;
  load.priority = priority;
  load.sheddable = sheddable;
  return load;
}

} // namespace lavatube::thermal
