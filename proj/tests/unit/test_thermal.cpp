#include <doctest.h>

#include <random>

#include "lavatube/errors.hpp"
#include "lavatube/thermal.hpp"

using namespace lavatube;
using namespace lavatube::thermal;

TEST_CASE("greenhouse night heat loss and energy") {
  GlazedEnclosure enc;
  MarsEnvironment env;
  // 5 * 1.1 * 93
  CHECK(heat_loss(enc, -73.0) == doctest::Approx(511.5).epsilon(1e-12));
  CHECK(heat_loss(enc, 20.0) == 0.0);
  CHECK(heat_loss(enc, 30.0) == 0.0);
  // 511.5 W over 44400 s
  CHECK(night_heating_energy(enc, env) == doctest::Approx(511.5 * 44400.0 / 3.6e6).epsilon(1e-12));
  CHECK(std::abs(night_heating_energy(enc, env) - 6.3) / 6.3 < 0.01);
}

TEST_CASE("enclosure validation") {
  CHECK_THROWS_AS((GlazedEnclosure{-1.0, 1.1, 20}).validate(), DomainError);
  CHECK_THROWS_AS((GlazedEnclosure{5.0, -1.0, 20}).validate(), DomainError);
}

TEST_CASE("property: heat loss is nonnegative and linear in area, U and gradient") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MarsEnvironment env;
  for (int i = 0; i < 2000; ++i) {
    GlazedEnclosure enc{0.1 + 20 * u(rng), 0.1 + 5 * u(rng), -20 + 50 * u(rng)};
    const double outside = -120 + 160 * u(rng);
    const double q = heat_loss(enc, outside);
    CHECK(q >= 0.0);
    auto doubled = enc;
    doubled.glazed_area *= 2;
    CHECK(heat_loss(doubled, outside) == doctest::Approx(2 * q));
    doubled = enc;
    doubled.u_value *= 3;
    CHECK(heat_loss(doubled, outside) == doctest::Approx(3 * q));
    if (outside < enc.target_temp_c) {
      const double dt = enc.target_temp_c - outside;
      CHECK(heat_loss(enc, enc.target_temp_c - 2 * dt) == doctest::Approx(2 * q));
    }
    env.night_low_c = std::min(outside, env.day_high_c - 1.0);
    env.night_duration_s = 1000 + 80000 * u(rng);
    const double e = night_heating_energy(enc, env);
    const double expected = heat_loss(enc, env.night_low_c) * env.night_duration_s / 3.6e6;
    CHECK(std::abs(e - expected) <= 1e-9 * std::max(1.0, expected));
  }
}

TEST_CASE("avionics envelope under the cold extreme") {
  const auto env = environment_preset("cold_extreme");
  AvionicsEnvelope envl;
  const auto off = avionics_envelope_check(env, envl, false);
  CHECK_FALSE(off.ok);
  REQUIRE_FALSE(off.violation_windows.empty());
  // The window covers the whole flat trough, which starts the sol.
  CHECK(off.violation_windows.front().start_s == 0.0);
  CHECK(off.violation_windows.front().end_s >= env.night_duration_s);
  CHECK(off.worst_margin_c == doctest::Approx(-50.0));

  // -90 + dT = -39 -> dT = 51 C -> 510 W at 10 C / 100 W
  envl.heater_power_w = 51.0 / envl.heater_delta_c * 100.0;
  const auto on = avionics_envelope_check(env, envl, true);
  CHECK(on.ok);
  CHECK(on.min_temp_c == doctest::Approx(-39.0));
  CHECK(on.worst_margin_c == doctest::Approx(1.0));
  CHECK(on.violation_windows.empty());
}

TEST_CASE("ambient profile inside the envelope passes without a heater") {
  MarsEnvironment env;
  env.night_low_c = -30.0;
  env.day_high_c = 30.0;
  const auto r = avionics_envelope_check(env, {}, false);
  CHECK(r.ok);
  CHECK(r.worst_margin_c == doctest::Approx(10.0));
}

TEST_CASE("property: colder nights never fix an unheated avionics failure") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    MarsEnvironment env;
    env.day_high_c = -10 + 60 * u(rng);
    env.night_low_c = env.day_high_c - 1 - 100 * u(rng);
    const bool ok = avionics_envelope_check(env, {}, false, 600.0).ok;
    env.night_low_c -= 20 * u(rng);
    const bool colder = avionics_envelope_check(env, {}, false, 600.0).ok;
    if (!ok) CHECK_FALSE(colder);
  }
}

TEST_CASE("greenhouse heater as a night load") {
  GlazedEnclosure enc;
  MarsEnvironment env;
  const auto load = greenhouse_night_load(enc, env);
  CHECK(load.power_w == doctest::Approx(511.5));
  CHECK(load.start_s == 0.0);
  CHECK(load.end_s == env.night_duration_s);
  CHECK(load.priority == 2);
  CHECK_FALSE(load.sheddable);
}
