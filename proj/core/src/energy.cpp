#include "lavatube/energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lavatube/aerostat.hpp"
#include "lavatube/errors.hpp"

namespace lavatube::energy {

void WinchSpec::validate() const {
  if (!(payload_mass >= 0.0 && line_speed > 0.0 && depth > 0.0 && motor_margin >= 0.0))
    throw DomainError("winch mass must be >= 0; speed and depth must be > 0; margin >= 0");
  if (!(regen_efficiency >= 0.0 && regen_efficiency <= 1.0))
    throw DomainError("regen_efficiency outside [0, 1]");
}

WinchPower winch_power(const WinchSpec& spec, const MarsEnvironment& env) {
  spec.validate();
  WinchPower p;
  p.raw_kw = spec.payload_mass * env.gravity * spec.line_speed / 1000.0;
  p.with_margin_kw = p.raw_kw * (1.0 + spec.motor_margin);
  return p;
}

double winch_regen_energy(const WinchSpec& spec, const MarsEnvironment& env) {
  spec.validate();
  return spec.payload_mass * env.gravity * spec.depth * spec.regen_efficiency / kSecondsPerHour;
}

std::string_view to_string(SourceKind k) {
  switch (k) {
  case SourceKind::Constant: return "Constant";
  case SourceKind::WindTurbine: return "WindTurbine";
  case SourceKind::WinchRegen: return "WinchRegen";
  case SourceKind::Trickle: return "Trickle";
  }
  return "Constant";
}

SourceKind source_kind_from_string(std::string_view s) {
  for (auto k : {SourceKind::Constant, SourceKind::WindTurbine, SourceKind::WinchRegen, SourceKind::Trickle})
    if (to_string(k) == s) return k;
  throw DomainError("unknown source kind '" + std::string(s) + "'");
}

void PowerSource::validate() const {
  if (!(rating_w >= 0.0 && event_energy_wh >= 0.0 && wind_speed_mps >= 0.0 && swept_area_m2 >= 0.0))
    throw DomainError("source '" + name + "': ratings must be >= 0");
  if (kind == SourceKind::WindTurbine &&
      !(power_coefficient >= 0.0 && power_coefficient <= aerostat::kBetzLimit))
    throw DomainError("source '" + name + "': power coefficient outside [0, 16/27]");
  for (double t : event_times_s)
    if (!(t >= 0.0)) throw DomainError("source '" + name + "': event times must be >= 0");
}

void PowerLoad::validate(double sol_length_s) const {
  if (!(power_w >= 0.0)) throw DomainError("load '" + name + "': power_w must be >= 0");
  if (!(start_s >= 0.0 && start_s < end_s && end_s <= sol_length_s))
    throw DomainError("load '" + name + "': window must satisfy 0 <= start < end <= sol length");
}

void Battery::validate() const {
  if (!(capacity_wh >= 0.0)) throw DomainError("battery capacity must be >= 0");
  if (!(initial_soc_wh >= 0.0 && initial_soc_wh <= capacity_wh))
    throw DomainError("battery initial SoC outside [0, capacity]");
  if (!(charge_efficiency > 0.0 && charge_efficiency <= 1.0 && discharge_efficiency > 0.0 &&
        discharge_efficiency <= 1.0))
    throw DomainError("battery efficiencies outside (0, 1]");
}

bool SocTrace::has_hard_violation() const {
  return std::any_of(violations.begin(), violations.end(), [](const Violation& v) { return !v.sheddable; });
}

double source_power(const PowerSource& src, const MarsEnvironment& env, double t0, double dt) {
  switch (src.kind) {
  case SourceKind::Constant:
  case SourceKind::Trickle:
    return src.rating_w;
  case SourceKind::WindTurbine:
    return aerostat::turbine_power(env.ambient_density, src.swept_area_m2, src.wind_speed_mps,
                                   src.power_coefficient);
  case SourceKind::WinchRegen: {
    double wh = 0.0;
    for (double t : src.event_times_s)
      if (t >= t0 && t < t0 + dt) wh += src.event_energy_wh;
    return wh * kSecondsPerHour / dt;
  }
  }
  return 0.0;
}

namespace {

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

struct ActiveLoad {
  const PowerLoad* load;
  double avg_w;
};

// Least critical first; sheddable loads go before any non-sheddable one.
bool curtail_before(const ActiveLoad& a, const ActiveLoad& b) {
  if (a.load->sheddable != b.load->sheddable) return a.load->sheddable;
  if (a.load->priority != b.load->priority) return a.load->priority > b.load->priority;
  return a.load->name < b.load->name;
}

} // namespace

SocTrace simulate_sol(const std::vector<PowerSource>& sources, const std::vector<PowerLoad>& loads,
                      const Battery& battery, const MarsEnvironment& env, double timestep_s) {
  if (!(timestep_s > 0.0) || !std::isfinite(timestep_s)) throw DomainError("timestep must be > 0");
  env.validate();
  battery.validate();
  for (const auto& s : sources) s.validate();
  for (const auto& l : loads) l.validate(env.sol_length_s);

  SocTrace trace;
  trace.timestep_s = timestep_s;
  trace.capacity_wh = battery.capacity_wh;
  trace.initial_soc_wh = battery.initial_soc_wh;

  const double sol = env.sol_length_s;
  const auto steps = static_cast<std::size_t>(std::ceil(sol / timestep_s));
  trace.samples.reserve(steps);

  double soc = battery.initial_soc_wh;
  std::vector<ActiveLoad> active;
  active.reserve(loads.size());

  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = static_cast<double>(k) * timestep_s;
    if (t0 >= sol) break;
    const double dur = std::min(timestep_s, sol - t0);
    const double hours = dur / kSecondsPerHour;

    double supply = 0.0;
    for (const auto& s : sources) supply += source_power(s, env, t0, dur);

    active.clear();
    double demand = 0.0;
    for (const auto& l : loads) {
      const double on = overlap(t0, t0 + dur, l.start_s, l.end_s);
      if (on <= 0.0 || l.power_w == 0.0) continue;
      const double avg = l.power_w * on / dur;
      active.push_back({&l, avg});
      demand += avg;
    }

    double shed = 0.0;
    if (supply >= demand) {
      const double surplus_wh = (supply - demand) * hours;
      const double offered = surplus_wh * battery.charge_efficiency;
      const double stored = std::min(offered, battery.capacity_wh - soc);
      trace.totals.charge_input_wh += surplus_wh;
      trace.totals.clamp_loss_wh += offered - stored;
      soc += stored;
    } else {
      const double deficit_wh = (demand - supply) * hours;
      const double draw = deficit_wh / battery.discharge_efficiency;
      if (draw <= soc) {
        soc -= draw;
        trace.totals.discharge_delivered_wh += deficit_wh;
      } else {
        const double delivered = soc * battery.discharge_efficiency;
        trace.totals.discharge_delivered_wh += delivered;
        soc = 0.0;
        double remaining_w = (deficit_wh - delivered) / hours;
        std::sort(active.begin(), active.end(), curtail_before);
        for (const auto& a : active) {
          if (remaining_w <= 0.0) break;
          const double cut = std::min(a.avg_w, remaining_w);
          remaining_w -= cut;
          shed += cut;
          trace.violations.push_back({t0, a.load->name, cut, a.load->sheddable});
        }
      }
    }
    soc = std::clamp(soc, 0.0, battery.capacity_wh);

    trace.totals.supplied_wh += supply * hours;
    trace.totals.demanded_wh += demand * hours;
    trace.totals.shed_wh += shed * hours;
    trace.samples.push_back({t0, dur, soc, supply, demand, shed});
  }
  trace.final_soc_wh = soc;
  return trace;
}

Schedule schedule_loads(const std::vector<PowerSource>& sources, const std::vector<PowerLoad>& loads,
                        const Battery& battery, const MarsEnvironment& env, double timestep_s) {
  std::vector<PowerLoad> order = loads;
  std::sort(order.begin(), order.end(), [](const PowerLoad& a, const PowerLoad& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.name < b.name;
  });

  Schedule sched;
  for (const auto& load : order) {
    auto candidate = sched.admitted;
    candidate.push_back(load);
    const auto trace = simulate_sol(sources, candidate, battery, env, timestep_s);
    LoadVerdict verdict{load.name, load.priority, true, "admitted"};
    auto hard = std::find_if(trace.violations.begin(), trace.violations.end(),
                             [](const Violation& v) { return !v.sheddable; });
    if (hard != trace.violations.end()) {
      verdict.admitted = false;
      std::ostringstream why;
      why << "would curtail non-sheddable load '" << hard->load << "' by " << hard->deficit_w
          << " W at t=" << hard->time_s << " s";
      verdict.reason = why.str();
      sched.feasible = false;
    } else {
      sched.admitted.push_back(load);
    }
    sched.verdicts.push_back(std::move(verdict));
  }
  return sched;
}

} // namespace lavatube::energy
