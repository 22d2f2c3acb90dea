#include <doctest.h>

#include <cmath>
#include <random>

#include "lavatube/env.hpp"
#include "lavatube/errors.hpp"

using namespace lavatube;

TEST_CASE("default environment validates and splits the sol into night and day") {
  MarsEnvironment env;
  CHECK_NOTHROW(env.validate());
  CHECK(env.night_duration_s == 44400.0);
  CHECK(env.day_duration_s() == doctest::Approx(88775.0 - 44400.0));
}

TEST_CASE("environment validation rejects broken values") {
  MarsEnvironment env;
  env.gravity = 0.0;
  CHECK_THROWS_AS(env.validate(), DomainError);
  env = {};
  env.night_low_c = 30.0; // above the day high
  CHECK_THROWS_AS(env.validate(), DomainError);
  env = {};
  env.night_duration_s = env.sol_length_s + 1.0;
  CHECK_THROWS_AS(env.validate(), DomainError);
}

TEST_CASE("presets") {
  CHECK(environment_preset("nili_fossae_default").night_low_c == -73.0);
  CHECK(environment_preset("cold_extreme").night_low_c == -90.0);
  CHECK(environment_preset("deep_cold").night_low_c == -100.0);
  CHECK_THROWS_AS(environment_preset("venus"), DomainError);
  for (const auto& name : environment_preset_names()) CHECK_NOTHROW(environment_preset(name).validate());
}

TEST_CASE("diurnal profile hits the day high at the peak and the night low in the trough") {
  MarsEnvironment env;
  CHECK(diurnal_temperature(env, diurnal_peak_time(env)) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(diurnal_temperature(env, 0.0) == -73.0);
  CHECK(diurnal_temperature(env, env.night_duration_s / 2) == -73.0);
  CHECK(diurnal_peak_time(env) == doctest::Approx(44400.0 + (88775.0 - 44400.0) / 2));
}

TEST_CASE("diurnal profile rejects times outside the sol") {
  MarsEnvironment env;
  CHECK_THROWS_AS(diurnal_temperature(env, -1.0), DomainError);
  CHECK_THROWS_AS(diurnal_temperature(env, env.sol_length_s), DomainError);
}

TEST_CASE("property: diurnal profile stays within [night_low, day_high] and is continuous at the wrap") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    MarsEnvironment env;
    env.night_low_c = std::uniform_real_distribution<double>(-120, -10)(rng);
    env.day_high_c = env.night_low_c + std::uniform_real_distribution<double>(0.5, 80)(rng);
    env.night_duration_s = std::uniform_real_distribution<double>(0.1, 0.9)(rng) * env.sol_length_s;
    const double t = std::uniform_real_distribution<double>(0.0, env.sol_length_s)(rng);
    if (t >= env.sol_length_s) continue;
    const double temp = diurnal_temperature(env, t);
    CHECK(temp >= env.night_low_c);
    CHECK(temp <= env.day_high_c + 1e-12);
    const double end = diurnal_temperature(env, std::nextafter(env.sol_length_s, 0.0));
    CHECK(end == doctest::Approx(env.night_low_c).epsilon(1e-9));
  }
}

TEST_CASE("dose endpoints and 50/50 mix") {
  MarsEnvironment env;
  CHECK(cumulative_dose(env, 0.0, 1.0) == 14.795);
  CHECK(cumulative_dose(env, 1.0, 1.0) == 0.012);
  // (14.795 + 0.012) / 2
  CHECK(cumulative_dose(env, 0.5, 1.0) == doctest::Approx(7.4035).epsilon(1e-12));
  CHECK(cumulative_dose(env, 0.0, 1.0) / cumulative_dose(env, 1.0, 1.0) == doctest::Approx(1232.9).epsilon(0.1 / 1232.9));
}

TEST_CASE("dose rejects bad inputs") {
  MarsEnvironment env;
  CHECK_THROWS_AS(cumulative_dose(env, -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(cumulative_dose(env, 1.1, 1.0), DomainError);
  CHECK_THROWS_AS(cumulative_dose(env, 0.5, -1.0), DomainError);
}

TEST_CASE("property: dose is exactly linear and nonincreasing in cave fraction") {
  MarsEnvironment env;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double d0 = cumulative_dose(env, 0.0, 1.0), d1 = cumulative_dose(env, 1.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double a = u(rng), b = u(rng);
    const double da = cumulative_dose(env, a, 1.0);
    const double expected = d0 + a * (d1 - d0);
    CHECK(std::abs(da - expected) <= 1e-12 * std::abs(expected));
    if (a < b) CHECK(da >= cumulative_dose(env, b, 1.0));
    const double periods = 1.0 + 10.0 * u(rng);
    CHECK(cumulative_dose(env, a, periods) == doctest::Approx(periods * da).epsilon(1e-12));
  }
}
