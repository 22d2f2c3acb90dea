#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lavatube/aerostat.hpp"
#include "lavatube/errors.hpp"

using namespace lavatube;
using namespace lavatube::aerostat;

namespace {
constexpr double kPi = std::numbers::pi;

BalloonConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BalloonConfig c;
  c.geometry.inner_radius = 10.0 * u(rng);
  c.geometry.outer_radius = c.geometry.inner_radius + 0.1 + 10.0 * u(rng);
  c.geometry.length = 0.1 + 20.0 * u(rng);
  c.gas_density = 0.03 * u(rng);
  c.hull_areal_density = 0.05 * u(rng);
  c.tether_length = 100.0 * u(rng);
  c.tether_linear_density = 0.05 * u(rng);
  c.payload_mass = 10.0 * u(rng);
  c.turbine_mass = 10.0 * u(rng);
  c.area_model = u(rng) < 0.5 ? AreaModel::FullWetted : AreaModel::OuterLateralOnly;
  return c;
}
} // namespace

TEST_CASE("ideal-gas lift densities at 610 Pa / 293 K") {
  MarsEnvironment env;
  // 610 * 0.032 / (8.314462618 * 293) = 0.0080127...
  const double o2 = lift_gas_density(oxygen(), 610.0, 293.0);
  CHECK(o2 == doctest::Approx(610.0 * 0.032 / (8.314462618 * 293.0)).epsilon(1e-15));
  CHECK(std::abs(o2 - 0.008008584) / 0.008008584 < 0.001);
  CHECK(lift_gas_density(helium(), 610.0, 293.0) == doctest::Approx(0.0010016).epsilon(1e-4));
  CHECK(lift_gas_density({"none", 0.0}, 610.0, 293.0) == 0.0);
  CHECK_THROWS_AS(lift_gas_density(oxygen(), 0.0, 293.0), DomainError);
  CHECK_THROWS_AS(lift_gas_density(oxygen(), 610.0, -1.0), DomainError);
  CHECK(lift_gas_by_name("CO2").molar_mass == 0.044);
  CHECK_THROWS_AS(lift_gas_by_name("Xe"), DomainError);
}

TEST_CASE("annular lifting volume") {
  CHECK(lifting_volume({7, 3, 6}) == doctest::Approx(753.982).epsilon(1e-6));
  CHECK(lifting_volume({7, 0, 6}) == doctest::Approx(kPi * 49 * 6));
  CHECK_THROWS_AS(lifting_volume({3, 7, 6}), DomainError);
  CHECK_THROWS_AS(lifting_volume({7, 3, 0}), DomainError);
}

TEST_CASE("hull area under both area models") {
  // 2piRL = 263.894, 2pirL = 113.097, 2pi(R^2 - r^2) = 251.327
  CHECK(hull_area({7, 3, 6}, AreaModel::FullWetted) == doctest::Approx(628.319).epsilon(1e-6));
  CHECK(hull_area({7, 3, 6}, AreaModel::OuterLateralOnly) == doctest::Approx(263.894).epsilon(1e-6));
  CHECK(hull_area({7, 3, 0}, AreaModel::FullWetted) == doctest::Approx(2 * kPi * 40));
  CHECK(to_string(area_model_from_string("FullWetted")) == "FullWetted");
  CHECK_THROWS_AS(area_model_from_string("Spherical"), DomainError);
}

TEST_CASE("design balloon is buoyant only when the outer lateral skin is counted") {
  MarsEnvironment env;
  BalloonConfig cfg;
  const auto lateral = buoyancy_margin(cfg, env);
  // gas 6.038 + hull 2.639 + tether 0.4 + payload 2 + turbine 2 = 13.077 kg
  CHECK(lateral.total_mass == doctest::Approx(13.0774).epsilon(1e-4));
  CHECK(lateral.overall_density == doctest::Approx(0.01735).epsilon(1e-3));
  CHECK(lateral.buoyant);
  CHECK(lateral.net_force > 0.0);

  cfg.area_model = AreaModel::FullWetted;
  const auto wetted = buoyancy_margin(cfg, env);
  CHECK(wetted.hull_mass == doctest::Approx(6.283).epsilon(1e-3));
  CHECK(wetted.overall_density == doctest::Approx(0.02218).epsilon(1e-3));
  CHECK_FALSE(wetted.buoyant);
  CHECK(wetted.net_force < 0.0);
}

TEST_CASE("neutral buoyancy gives zero net force") {
  MarsEnvironment env;
  BalloonConfig cfg;
  cfg.hull_areal_density = cfg.tether_linear_density = cfg.payload_mass = cfg.turbine_mass = 0.0;
  cfg.gas_density = env.ambient_density;
  const auto r = buoyancy_margin(cfg, env);
  CHECK(r.net_force == doctest::Approx(0.0).scale(1.0));
  CHECK_FALSE(r.buoyant);
}

TEST_CASE("turbine power follows the actuator-disc law and the Betz limit") {
  CHECK(turbine_power(0.02, 28.274, 0.0, 0.3) == 0.0);
  // 0.5 * 0.02 * (pi * 9) * 20^3 * 0.3
  CHECK(turbine_power(0.02, kPi * 9.0, 20.0, 0.3) == doctest::Approx(678.584).epsilon(1e-5));
  CHECK_NOTHROW(turbine_power(0.02, 1.0, 1.0, kBetzLimit));
  CHECK_THROWS_AS(turbine_power(0.02, 1.0, 1.0, 0.6), DomainError);
}

TEST_CASE("property: buoyant flag agrees with net force; masses roll up exactly; wetted >= lateral") {
  MarsEnvironment env;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    const auto cfg = random_config(rng);
    const auto r = buoyancy_margin(cfg, env);
    CHECK(r.buoyant == (r.net_force > 0.0));
    CHECK(r.total_mass == r.gas_mass + r.hull_mass + r.tether_mass + r.payload_mass + r.turbine_mass);
    CHECK(hull_area(cfg.geometry, AreaModel::FullWetted) >= hull_area(cfg.geometry, AreaModel::OuterLateralOnly));
  }
}

TEST_CASE("property: lighter lift gas lowers overall density and raises net force") {
  MarsEnvironment env;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> mm(0.001, 0.05);
  for (int i = 0; i < 1000; ++i) {
    auto cfg = random_config(rng);
    double m1 = mm(rng), m2 = mm(rng);
    if (m1 == m2) continue;
    if (m1 > m2) std::swap(m1, m2);
    auto light = cfg, heavy = cfg;
    light.gas_density = lift_gas_density({"a", m1}, env.surface_pressure, env.ambient_temperature);
    heavy.gas_density = lift_gas_density({"b", m2}, env.surface_pressure, env.ambient_temperature);
    const auto a = buoyancy_margin(light, env), b = buoyancy_margin(heavy, env);
    CHECK(a.overall_density < b.overall_density);
    CHECK(a.net_force > b.net_force);
  }
}
