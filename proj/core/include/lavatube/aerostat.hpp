#pragma once

#include <string>
#include <string_view>

#include "lavatube/env.hpp"

namespace lavatube::aerostat {

/// Annular cylinder: the lifting gas fills the ring between the inner duct
/// (which houses the turbine and is open to ambient air) and the outer hull.
struct BalloonGeometry {
  double outer_radius = 7.0; // m
  double inner_radius = 3.0; // m
  double length = 6.0;       // m

  void validate() const;
};

struct LiftGas {
  std::string name;
  double molar_mass = 0.0; // kg/mol
};

LiftGas helium();
LiftGas hydrogen();
LiftGas oxygen();
LiftGas carbon_dioxide();
/// Looks up "He", "H2", "O2" or "CO2".
LiftGas lift_gas_by_name(std::string_view name);

/// Which hull faces carry the areal hull weight.
enum class AreaModel {
  FullWetted,       // outer + inner lateral surfaces and both annular end caps
  OuterLateralOnly, // outer lateral surface only
};

std::string_view to_string(AreaModel m);
AreaModel area_model_from_string(std::string_view s);

/// Configuration set-up of the wind-power balloon, field names after the
/// design table.
struct BalloonConfig {
  BalloonGeometry geometry;
  double gas_density = 0.008008584;     // kg/m^3
  double hull_areal_density = 0.01;     // kg/m^2
  double tether_length = 40.0;          // m
  double tether_linear_density = 0.01;  // kg/m
  double payload_mass = 2.0;            // kg
  double turbine_mass = 2.0;            // kg
  AreaModel area_model = AreaModel::OuterLateralOnly;

  void validate() const;
};

struct BuoyancyResult {
  double lifting_volume = 0.0;  // m^3
  double hull_area = 0.0;       // m^2
  double gas_mass = 0.0;        // kg
  double hull_mass = 0.0;
  double tether_mass = 0.0;
  double payload_mass = 0.0;
  double turbine_mass = 0.0;
  double total_mass = 0.0;
  double overall_density = 0.0; // kg/m^3
  double net_force = 0.0;       // N, positive = upward
  bool buoyant = false;
};

/// Ideal-gas density p M / (R T).
double lift_gas_density(const LiftGas& gas, double pressure, double temperature,
                        double gas_constant = kUniversalGasConstant);

double lifting_volume(const BalloonGeometry& geom);
double hull_area(const BalloonGeometry& geom, AreaModel model);

/// Mass rollup and buoyancy verdict against the ambient atmosphere.
BuoyancyResult buoyancy_margin(const BalloonConfig& cfg, const MarsEnvironment& env);

inline constexpr double kBetzLimit = 16.0 / 27.0;

/// Actuator-disc power 0.5 rho A v^3 Cp [W]. Cp above the Betz limit is
/// rejected.
double turbine_power(double air_density, double swept_area, double wind_speed,
                     double power_coefficient);

} // namespace lavatube::aerostat
