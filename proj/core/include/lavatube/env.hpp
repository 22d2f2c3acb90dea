#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lavatube {

inline constexpr double kUniversalGasConstant = 8.314462618; // J/(mol K)
inline constexpr double kSecondsPerHour = 3600.0;

/// Martian surface context shared by every model. Times of sol are measured
/// from sunset: the night window is [0, night_duration_s) and the day fills
/// the remainder of the sol.
struct MarsEnvironment {
  double gravity = 3.721;              // m/s^2
  double ambient_density = 0.02;       // kg/m^3
  double surface_pressure = 610.0;     // Pa
  double gas_constant = kUniversalGasConstant;
  double ambient_temperature = 293.0;  // K
  double day_high_c = 20.0;
  double night_low_c = -73.0;
  double sol_length_s = 88775.0;
  double night_duration_s = 12.0 * 3600.0 + 20.0 * 60.0;
  double dose_surface_msv = 14.795;    // per reference period (opaque)
  double dose_cave_msv = 0.012;

  /// Throws DomainError naming the first broken invariant.
  void validate() const;

  double day_duration_s() const { return sol_length_s - night_duration_s; }
};

/// Named presets. "nili_fossae_default" is the baseline greenhouse climate;
/// "cold_extreme" is the avionics worst case (nights down to -90 C);
/// "deep_cold" uses the -100 C surface minimum quoted for the balloon.
MarsEnvironment environment_preset(std::string_view name);
std::vector<std::string> environment_preset_names();

/// Surface temperature over one sol [C]. Flat at night_low_c for the whole
/// night window, raised-cosine day arc peaking at day_high_c at midday.
/// Continuous and periodic across the sol boundary.
double diurnal_temperature(const MarsEnvironment& env, double time_of_sol_s);

/// Time of the daily maximum (the middle of the day window).
double diurnal_peak_time(const MarsEnvironment& env);

/// Dose accumulated over `periods` reference periods when a fraction
/// `cave_fraction` of the time is spent shielded inside a lava tube.
double cumulative_dose(const MarsEnvironment& env, double cave_fraction, double periods);

} // namespace lavatube
