#include "lavatube/aerostat.hpp"

#include <cmath>
#include <numbers>

#include "lavatube/errors.hpp"

namespace lavatube::aerostat {

using std::numbers::pi;

void BalloonGeometry::validate() const {
  if (!(inner_radius >= 0.0)) throw DomainError("inner_radius must be >= 0");
  if (!(outer_radius > inner_radius)) throw DomainError("outer_radius must exceed inner_radius");
  if (!(length > 0.0)) throw DomainError("length must be > 0");
}

void BalloonConfig::validate() const {
  geometry.validate();
  if (!(gas_density >= 0.0 && hull_areal_density >= 0.0 && tether_length >= 0.0 &&
        tether_linear_density >= 0.0 && payload_mass >= 0.0 && turbine_mass >= 0.0))
    throw DomainError("balloon densities and masses must be >= 0");
}

LiftGas helium() { return {"He", 0.004}; }
LiftGas hydrogen() { return {"H2", 0.002}; }
LiftGas oxygen() { return {"O2", 0.032}; }
LiftGas carbon_dioxide() { return {"CO2", 0.044}; }

LiftGas lift_gas_by_name(std::string_view name) {
  for (auto gas : {helium(), hydrogen(), oxygen(), carbon_dioxide()})
    if (gas.name == name) return gas;
  throw DomainError("unknown lifting gas '" + std::string(name) + "'");
}

std::string_view to_string(AreaModel m) {
  return m == AreaModel::FullWetted ? "FullWetted" : "OuterLateralOnly";
}

AreaModel area_model_from_string(std::string_view s) {
  if (s == "FullWetted") return AreaModel::FullWetted;
  if (s == "OuterLateralOnly") return AreaModel::OuterLateralOnly;
  throw DomainError("unknown area model '" + std::string(s) + "'");
}

double lift_gas_density(const LiftGas& gas, double pressure, double temperature,
                        double gas_constant) {
  if (!(pressure > 0.0)) throw DomainError("pressure must be > 0");
  if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");
  if (!(gas.molar_mass >= 0.0)) throw DomainError("molar mass must be >= 0");
  return pressure * gas.molar_mass / (gas_constant * temperature);
}

double lifting_volume(const BalloonGeometry& g) {
  g.validate();
  const double R = g.outer_radius, r = g.inner_radius;
  return pi * (R * R - r * r) * g.length;
}

double hull_area(const BalloonGeometry& g, AreaModel model) {
  const double R = g.outer_radius, r = g.inner_radius, L = g.length;
  if (model == AreaModel::OuterLateralOnly) return 2.0 * pi * R * L;
  return 2.0 * pi * R * L + 2.0 * pi * r * L + 2.0 * pi * (R * R - r * r);
}

BuoyancyResult buoyancy_margin(const BalloonConfig& cfg, const MarsEnvironment& env) {
  cfg.validate();
  BuoyancyResult out;
  out.lifting_volume = lifting_volume(cfg.geometry);
  out.hull_area = hull_area(cfg.geometry, cfg.area_model);
  out.gas_mass = cfg.gas_density * out.lifting_volume;
  out.hull_mass = cfg.hull_areal_density * out.hull_area;
  out.tether_mass = cfg.tether_linear_density * cfg.tether_length;
  out.payload_mass = cfg.payload_mass;
  out.turbine_mass = cfg.turbine_mass;
  out.total_mass = out.gas_mass + out.hull_mass + out.tether_mass + out.payload_mass + out.turbine_mass;
  out.overall_density = out.total_mass / out.lifting_volume;
  out.net_force = (env.ambient_density - out.overall_density) * out.lifting_volume * env.gravity;
  out.buoyant = out.overall_density < env.ambient_density;
  return out;
}

double turbine_power(double air_density, double swept_area, double wind_speed,
                     double power_coefficient) {
  if (!(power_coefficient >= 0.0 && power_coefficient <= kBetzLimit))
    throw DomainError("power coefficient outside [0, 16/27]");
  if (!(air_density >= 0.0 && swept_area >= 0.0 && wind_speed >= 0.0))
    throw DomainError("density, area and wind speed must be >= 0");
  return 0.5 * air_density * swept_area * wind_speed * wind_speed * wind_speed * power_coefficient;
}

} // namespace lavatube::aerostat
