#include "lavatube/mission.hpp"

#include <algorithm>
#include <sstream>

#include "lavatube/errors.hpp"
#include "lavatube/rng.hpp"

namespace lavatube::mission {

std::string_view to_string(MissionPhase p) {
  switch (p) {
  case MissionPhase::Initial: return "Initial";
  case MissionPhase::Transit: return "Transit";
  case MissionPhase::Settlement: return "Settlement";
  case MissionPhase::Complete: return "Complete";
  }
  return "Initial";
}

std::string_view to_string(MissionEvent e) {
  switch (e) {
  case MissionEvent::DeploymentDone: return "DeploymentDone";
  case MissionEvent::ArrivedAtTube: return "ArrivedAtTube";
  case MissionEvent::TubeSurveyComplete: return "TubeSurveyComplete";
  case MissionEvent::RelocateToNextTube: return "RelocateToNextTube";
  case MissionEvent::EndMission: return "EndMission";
  }
  return "EndMission";
}

MissionPhase mission_phase_from_string(std::string_view s) {
  for (auto p : {MissionPhase::Initial, MissionPhase::Transit, MissionPhase::Settlement, MissionPhase::Complete})
    if (to_string(p) == s) return p;
  throw DomainError("unknown mission phase '" + std::string(s) + "'");
}

MissionEvent mission_event_from_string(std::string_view s) {
  for (auto e : {MissionEvent::DeploymentDone, MissionEvent::ArrivedAtTube, MissionEvent::TubeSurveyComplete,
                 MissionEvent::RelocateToNextTube, MissionEvent::EndMission})
    if (to_string(e) == s) return e;
  throw DomainError("unknown mission event '" + std::string(s) + "'");
}

MissionState advance(MissionState s, MissionEvent e) {
  using P = MissionPhase;
  using E = MissionEvent;
  if (e == E::EndMission) {
    s.phase = P::Complete;
    return s;
  }
  if (s.phase == P::Initial && e == E::DeploymentDone) {
    s.phase = P::Transit;
    return s;
  }
  if (s.phase == P::Transit && e == E::ArrivedAtTube) {
    s.phase = P::Settlement;
    return s;
  }
  if (s.phase == P::Settlement && e == E::TubeSurveyComplete) {
    ++s.tubes_explored;
    return s;
  }
  if (s.phase == P::Settlement && e == E::RelocateToNextTube) {
    s.phase = P::Transit;
    return s;
  }
  throw IllegalTransition("event " + std::string(to_string(e)) + " is not valid in phase " +
                          std::string(to_string(s.phase)));
}

GerminationTrial germination_trial(std::uint64_t n_seeds, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("germination probability outside [0, 1]");
  Rng rng(seed, streams::kGermination);
  GerminationTrial t{n_seeds, p, seed, 0};
  for (std::uint64_t i = 0; i < n_seeds; ++i) t.germinated += rng.bernoulli(p);
  return t;
}

namespace {

template <class F>
auto tagged(const char* module, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ModuleError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModuleError(module, e.what());
  }
}

} // namespace

MissionReport run_mission(const MissionConfig& cfg) {
  const auto& env = cfg.env.env;
  tagged("env", [&] { env.validate(); });

  auto script = cfg.mission.script;
  const bool implicit_end = script.empty() || script.back() != MissionEvent::EndMission;
  if (implicit_end) script.push_back(MissionEvent::EndMission);

  const double regen_per_descent = tagged("energy", [&] { return energy::winch_regen_energy(cfg.winch, env); });

  MissionReport rep;
  MissionState state;
  rep.state_sequence.push_back(state.phase);
  double soc = cfg.power.battery.initial_soc_wh;
  std::uint64_t pending_descents = 0;

  auto sols_in = [&](MissionPhase p) {
    auto it = cfg.mission.phase_sols.find(p);
    return it == cfg.mission.phase_sols.end() ? std::uint64_t{0} : it->second;
  };
  auto cave_fraction_in = [&](MissionPhase p) {
    auto it = cfg.mission.cave_fraction.find(p);
    return it == cfg.mission.cave_fraction.end() ? 0.0 : it->second;
  };

  auto simulate_one_sol = [&](MissionPhase phase) {
    SolRecord rec;
    rec.sol = state.sol;
    rec.phase = phase;
    rec.cave_fraction = cave_fraction_in(phase);
    rec.dose_msv = tagged("env", [&] { return cumulative_dose(env, rec.cave_fraction, 1.0); });

    auto sources = cfg.power.sources;
    if (pending_descents > 0) {
      energy::PowerSource regen;
      regen.name = "winch_regen";
      regen.kind = energy::SourceKind::WinchRegen;
      regen.event_energy_wh = regen_per_descent;
      regen.event_times_s.assign(pending_descents, cfg.mission.descent_time_s);
      rec.regen_wh = static_cast<double>(pending_descents) * regen_per_descent;
      sources.push_back(std::move(regen));
      pending_descents = 0;
    }
    auto battery = cfg.power.battery;
    battery.initial_soc_wh = std::clamp(soc, 0.0, battery.capacity_wh);
    rec.initial_soc_wh = battery.initial_soc_wh;
    const auto trace = tagged("energy", [&] {
      return energy::simulate_sol(sources, loads_for_phase(cfg, phase), battery, env, cfg.power.timestep_s);
    });
    soc = trace.final_soc_wh;
    rec.final_soc_wh = soc;
    rec.shed_wh = trace.totals.shed_wh;
    rec.violations = trace.violations.size();
    rec.hard_violations = static_cast<std::size_t>(std::count_if(
        trace.violations.begin(), trace.violations.end(), [](const energy::Violation& v) { return !v.sheddable; }));
    rep.total_dose_msv += rec.dose_msv;
    rep.sols.push_back(rec);
    ++state.sol;
  };

  for (std::size_t i = 0; i < script.size(); ++i) {
    const MissionEvent event = script[i];
    const MissionPhase phase = state.phase;

    if (rep.phases_visited.empty() || rep.phases_visited.back() != phase) rep.phases_visited.push_back(phase);
    const auto n = sols_in(phase);
    for (std::uint64_t s = 0; s < n; ++s) simulate_one_sol(phase);

    if (phase == MissionPhase::Settlement && event == MissionEvent::TubeSurveyComplete) {
      const std::uint64_t tube = state.tubes_explored;
      auto report = tagged("tube_explorer", [&] {
        auto map = tube_map(cfg.exploration, tube);
        auto station = cfg.exploration.station;
        station.winch = cfg.winch;
        return explore::run_exploration(std::move(map), cfg.exploration.robots, station, env,
                                        cfg.exploration.max_steps, false);
      });
      pending_descents += static_cast<std::uint64_t>(cfg.exploration.station.descents);
      rep.explorations.push_back(std::move(report));
    }
    if (phase == MissionPhase::Transit && event == MissionEvent::ArrivedAtTube) ++rep.transit_to_settlement;

    const MissionState next = tagged("mission", [&] { return advance(state, event); });
    if (next.phase == MissionPhase::Settlement && !rep.germination) {
      const auto& g = cfg.mission.germination;
      rep.germination = tagged("mission", [&] { return germination_trial(g.n_seeds, g.p_germinate, g.seed); });
    }
    rep.events.push_back({state.sol, event, phase, next.phase, implicit_end && i + 1 == script.size()});
    if (next.phase != phase) rep.state_sequence.push_back(next.phase);
    state = next;
  }

  rep.final_state = state;
  rep.regen_credited_wh = static_cast<double>(state.tubes_explored) *
                          static_cast<double>(cfg.exploration.station.descents) * regen_per_descent;

  std::uint64_t infeasible_sols = 0;
  for (const auto& s : rep.sols) infeasible_sols += s.hard_violations > 0;
  if (infeasible_sols > 0) {
    std::ostringstream msg;
    msg << infeasible_sols << " of " << rep.sols.size()
        << " sols curtail non-sheddable loads; the power system cannot carry the scheduled load set";
    rep.findings.push_back({FindingClass::Infeasible, "mission", msg.str()});
  }
  for (std::size_t i = 0; i < rep.explorations.size(); ++i) {
    if (!rep.explorations[i].completed) {
      rep.findings.push_back({FindingClass::LimitViolation, "tube_explorer",
                              "tube " + std::to_string(i) + " survey ended with outcome '" +
                                  rep.explorations[i].outcome + "' before full coverage"});
    }
  }
  return rep;
}

} // namespace lavatube::mission
