#include <doctest.h>

#include <algorithm>
#include <random>

#include "lavatube/energy.hpp"
#include "lavatube/errors.hpp"
#include "lavatube/thermal.hpp"

using namespace lavatube;
using namespace lavatube::energy;

namespace {

PowerSource constant(std::string name, double w) {
  PowerSource s;
  s.name = std::move(name);
  s.kind = SourceKind::Constant;
  s.rating_w = w;
  return s;
}

PowerLoad load(std::string name, double w, double start, double end, int prio = 0, bool shed = false) {
  return {std::move(name), w, start, end, prio, shed};
}

// Stored energy bookkeeping must close exactly.
double closure_error(const SocTrace& t, const Battery& b) {
  const double expected = t.initial_soc_wh + t.totals.charge_input_wh * b.charge_efficiency -
                          t.totals.discharge_delivered_wh / b.discharge_efficiency - t.totals.clamp_loss_wh;
  return std::abs(expected - t.final_soc_wh);
}

struct RandomScenario {
  std::vector<PowerSource> sources;
  std::vector<PowerLoad> loads;
  Battery battery;
};

RandomScenario random_scenario(std::mt19937_64& rng, const MarsEnvironment& env) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomScenario s;
  const int ns = 1 + static_cast<int>(u(rng) * 3);
  for (int i = 0; i < ns; ++i) s.sources.push_back(constant("src" + std::to_string(i), 200 * u(rng)));
  const int nl = static_cast<int>(u(rng) * 6);
  for (int i = 0; i < nl; ++i) {
    double a = env.sol_length_s * u(rng), b = env.sol_length_s * u(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1.0) b = std::min(env.sol_length_s, a + 1.0);
    if (a >= b) continue;
    s.loads.push_back(load("load" + std::to_string(i), 300 * u(rng), a, b, static_cast<int>(u(rng) * 5), u(rng) < 0.3));
  }
  s.battery.capacity_wh = 2000 * u(rng);
  s.battery.initial_soc_wh = s.battery.capacity_wh * u(rng);
  s.battery.charge_efficiency = 0.5 + 0.5 * u(rng);
  s.battery.discharge_efficiency = 0.5 + 0.5 * u(rng);
  return s;
}

} // namespace

TEST_CASE("winch power and regeneration for the design descent") {
  MarsEnvironment env;
  const auto p = winch_power({}, env);
  // 500 * 3.721 * 0.4 / 1000
  CHECK(p.raw_kw == doctest::Approx(0.7442).epsilon(1e-12));
  CHECK(p.with_margin_kw == doctest::Approx(0.81862).epsilon(1e-12));
  // 500 * 3.721 * 100 * 0.7 / 3600
  CHECK(winch_regen_energy({}, env) == doctest::Approx(36.17639).epsilon(1e-6));

  WinchSpec w;
  w.payload_mass = 0.0;
  CHECK(winch_power(w, env).raw_kw == 0.0);
  w = {};
  w.regen_efficiency = 0.0;
  CHECK(winch_regen_energy(w, env) == 0.0);
  w.regen_efficiency = 1.0;
  CHECK(winch_regen_energy(w, env) == 500.0 * 3.721 * 100.0 / 3600.0);
  w.regen_efficiency = 1.2;
  CHECK_THROWS_AS(w.validate(), DomainError);
}

TEST_CASE("property: regenerated energy never exceeds the potential energy") {
  MarsEnvironment env;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    WinchSpec w;
    w.payload_mass = 1000 * u(rng);
    w.depth = 300 * u(rng);
    w.regen_efficiency = u(rng);
    CHECK(winch_regen_energy(w, env) <= w.payload_mass * env.gravity * w.depth / 3600.0);
  }
}

TEST_CASE("RTG carries a small always-on load") {
  MarsEnvironment env;
  Battery b;
  const auto t = simulate_sol({constant("rtg", 110)}, {load("avionics", 50, 0, env.sol_length_s)}, b, env);
  CHECK(t.violations.empty());
  double prev = t.initial_soc_wh;
  for (const auto& s : t.samples) {
    CHECK(s.soc_wh >= prev);
    prev = s.soc_wh;
  }
}

TEST_CASE("RTG cannot carry the greenhouse night heater without storage") {
  MarsEnvironment env;
  Battery none{0, 0, 0.95, 0.95};
  const auto heater = thermal::greenhouse_night_load({}, env);
  const auto t = simulate_sol({constant("rtg", 110)}, {heater}, none, env, 60.0);
  // 44400 / 60 = 740 night steps, each short by 511.5 - 110 W
  REQUIRE(t.violations.size() == 740);
  for (std::size_t k = 0; k < t.violations.size(); ++k) {
    CHECK(t.violations[k].time_s == doctest::Approx(60.0 * static_cast<double>(k)));
    CHECK(t.violations[k].deficit_w == doctest::Approx(401.5));
    CHECK_FALSE(t.violations[k].sheddable);
  }
  CHECK(t.has_hard_violation());
  CHECK(t.violations.back().time_s + 60.0 == doctest::Approx(env.night_duration_s));
}

TEST_CASE("closed system keeps its charge") {
  MarsEnvironment env;
  Battery b{1000, 321, 0.9, 0.9};
  const auto t = simulate_sol({}, {}, b, env);
  CHECK(t.violations.empty());
  CHECK(t.final_soc_wh == 321);
  for (const auto& s : t.samples) CHECK(s.soc_wh == 321);
}

TEST_CASE("time stepping covers the sol exactly with a short last step") {
  MarsEnvironment env;
  const auto t = simulate_sol({}, {}, Battery{}, env, 60.0);
  // 88775 = 1479 * 60 + 35
  REQUIRE(t.samples.size() == 1480);
  CHECK(t.samples.back().duration_s == doctest::Approx(35.0));
  CHECK_THROWS_AS(simulate_sol({}, {}, Battery{}, env, 0.0), DomainError);
}

TEST_CASE("sheddable loads are curtailed before critical ones") {
  MarsEnvironment env;
  Battery none{0, 0, 1, 1};
  const auto t = simulate_sol({constant("rtg", 100)},
                              {load("avionics", 80, 0, 600, 0), load("chromatograph", 120, 0, 600, 4, true)}, none,
                              env, 60.0);
  REQUIRE_FALSE(t.violations.empty());
  for (const auto& v : t.violations) {
    CHECK(v.load == "chromatograph");
    CHECK(v.sheddable);
    CHECK(v.deficit_w == doctest::Approx(100.0));
  }
  CHECK_FALSE(t.has_hard_violation());
}

TEST_CASE("winch regeneration arrives as an energy pulse") {
  MarsEnvironment env;
  PowerSource regen;
  regen.name = "winch";
  regen.kind = SourceKind::WinchRegen;
  regen.event_energy_wh = 36.0;
  regen.event_times_s = {1000.0};
  Battery b{1000, 0, 1, 1};
  const auto t = simulate_sol({regen}, {}, b, env, 60.0);
  CHECK(t.final_soc_wh == doctest::Approx(36.0));
}

TEST_CASE("wind turbine source uses the actuator-disc law at ambient density") {
  MarsEnvironment env;
  PowerSource wind;
  wind.name = "duct";
  wind.kind = SourceKind::WindTurbine;
  wind.wind_speed_mps = 20;
  wind.swept_area_m2 = 28.274333882308138;
  wind.power_coefficient = 0.3;
  CHECK(source_power(wind, env, 0, 60) == doctest::Approx(678.584).epsilon(1e-5));
}

TEST_CASE("schedule admits avionics and rejects the heater under RTG only") {
  MarsEnvironment env;
  Battery small{100, 50, 0.95, 0.95};
  const auto heater = thermal::greenhouse_night_load({}, env);
  const auto s = schedule_loads({constant("rtg", 110)}, {heater, load("avionics", 40, 0, env.sol_length_s, 0)}, small,
                                env);
  CHECK_FALSE(s.feasible);
  REQUIRE(s.verdicts.size() == 2);
  CHECK(s.verdicts[0].name == "avionics");
  CHECK(s.verdicts[0].admitted);
  CHECK(s.verdicts[1].name == "greenhouse_heater");
  CHECK_FALSE(s.verdicts[1].admitted);
  REQUIRE(s.admitted.size() == 1);

  const auto empty = schedule_loads({constant("rtg", 110)}, {}, small, env);
  CHECK(empty.feasible);
  CHECK(empty.admitted.empty());
}

TEST_CASE("property: energy closure, determinism, admitted sets never hard-violate") {
  MarsEnvironment env;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 150; ++i) {
    const auto sc = random_scenario(rng, env);
    const auto t = simulate_sol(sc.sources, sc.loads, sc.battery, env, 300.0);
    CHECK(closure_error(t, sc.battery) <= 1e-6 * static_cast<double>(t.samples.size()));
    for (const auto& s : t.samples) {
      CHECK(s.soc_wh >= 0.0);
      CHECK(s.soc_wh <= sc.battery.capacity_wh);
    }
    const auto again = simulate_sol(sc.sources, sc.loads, sc.battery, env, 300.0);
    CHECK(again.final_soc_wh == t.final_soc_wh);
    CHECK(again.violations.size() == t.violations.size());
    CHECK(again.totals.shed_wh == t.totals.shed_wh);

    if (i % 5 == 0) {
      const auto sched = schedule_loads(sc.sources, sc.loads, sc.battery, env, 300.0);
      CHECK_FALSE(simulate_sol(sc.sources, sched.admitted, sc.battery, env, 300.0).has_hard_violation());
    }
  }
}

TEST_CASE("component validation") {
  MarsEnvironment env;
  CHECK_THROWS_AS(load("x", -1, 0, 10).validate(env.sol_length_s), DomainError);
  CHECK_THROWS_AS(load("x", 1, 10, 5).validate(env.sol_length_s), DomainError);
  CHECK_THROWS_AS(load("x", 1, 0, env.sol_length_s + 1).validate(env.sol_length_s), DomainError);
  CHECK_THROWS_AS((Battery{100, 200, 0.9, 0.9}).validate(), DomainError);
  CHECK_THROWS_AS((Battery{100, 50, 0.0, 0.9}).validate(), DomainError);
  CHECK_THROWS_AS(constant("neg", -5).validate(), DomainError);
  CHECK(source_kind_from_string(to_string(SourceKind::Trickle)) == SourceKind::Trickle);
  CHECK_THROWS_AS(source_kind_from_string("Fusion"), DomainError);
}
