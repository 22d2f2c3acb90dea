#include <sstream>

#include "json_io.hpp"

namespace lavatube {

std::string_view to_string(FindingClass c) {
  switch (c) {
  case FindingClass::Infeasible: return "infeasible";
  case FindingClass::DiscrepancyVsPaper: return "discrepancy_vs_paper";
  case FindingClass::LimitViolation: return "limit_violation";
  }
  return "unknown";
}

namespace detail {

namespace {

json phase_names(const std::vector<mission::MissionPhase>& ps) {
  json a = json::array();
  for (auto p : ps) a.push_back(std::string(mission::to_string(p)));
  return a;
}

} // namespace

json to_json(const Finding& f) {
  return {{"class", std::string(to_string(f.kind))}, {"module", f.module}, {"message", f.message}};
}

json to_json(const aerostat::BuoyancyResult& r) {
  return {{"lifting_volume_m3", r.lifting_volume}, {"hull_area_m2", r.hull_area},
          {"gas_mass_kg", r.gas_mass},             {"hull_mass_kg", r.hull_mass},
          {"tether_mass_kg", r.tether_mass},       {"payload_mass_kg", r.payload_mass},
          {"turbine_mass_kg", r.turbine_mass},     {"total_mass_kg", r.total_mass},
          {"overall_density", r.overall_density},  {"net_force_n", r.net_force},
          {"buoyant", r.buoyant}};
}

json to_json(const energy::WinchPower& w) { return {{"raw_kw", w.raw_kw}, {"with_margin_kw", w.with_margin_kw}}; }

json to_json(const energy::Violation& v) {
  return {{"time_s", v.time_s}, {"load", v.load}, {"deficit_w", v.deficit_w}, {"sheddable", v.sheddable}};
}

json to_json(const energy::EnergyTotals& t) {
  return {{"supplied_wh", t.supplied_wh},
          {"demanded_wh", t.demanded_wh},
          {"charge_input_wh", t.charge_input_wh},
          {"discharge_delivered_wh", t.discharge_delivered_wh},
          {"clamp_loss_wh", t.clamp_loss_wh},
          {"shed_wh", t.shed_wh}};
}

json to_json(const energy::Schedule& s) {
  json verdicts = json::array();
  for (const auto& v : s.verdicts)
    verdicts.push_back({{"name", v.name}, {"priority", v.priority}, {"admitted", v.admitted}, {"reason", v.reason}});
  json admitted = json::array();
  for (const auto& l : s.admitted) admitted.push_back(l.name);
  return {{"feasible", s.feasible}, {"admitted", admitted}, {"verdicts", verdicts}};
}

json to_json(const energy::SocTrace& t) {
  json violations = json::array();
  for (const auto& v : t.violations) violations.push_back(to_json(v));
  double min_soc = t.initial_soc_wh;
  for (const auto& s : t.samples) min_soc = std::min(min_soc, s.soc_wh);
  json j = {{"timestep_s", t.timestep_s},
            {"steps", t.samples.size()},
            {"capacity_wh", t.capacity_wh},
            {"initial_soc_wh", t.initial_soc_wh},
            {"final_soc_wh", t.final_soc_wh},
            {"min_soc_wh", min_soc},
            {"totals", to_json(t.totals)},
            {"violations", violations},
            {"hard_violation", t.has_hard_violation()}};
  // Span of steps with a hard violation, as [first start, last end).
  double first = -1.0, last = -1.0;
  for (const auto& s : t.samples) {
    bool hard = false;
    for (const auto& v : t.violations) hard |= !v.sheddable && v.time_s == s.time_s;
    if (!hard) continue;
    if (first < 0.0) first = s.time_s;
    last = s.time_s + s.duration_s;
  }
  j["hard_violation_span_s"] = first < 0.0 ? json(nullptr) : json::array({first, last});
  return j;
}

json to_json(const thermal::EnvelopeCheck& c) {
  json windows = json::array();
  for (const auto& w : c.violation_windows) windows.push_back({{"start_s", w.start_s}, {"end_s", w.end_s}});
  return {{"ok", c.ok},
          {"worst_margin_c", c.worst_margin_c},
          {"min_temp_c", c.min_temp_c},
          {"max_temp_c", c.max_temp_c},
          {"violation_windows", windows}};
}

json to_json(const explore::ExplorationReport& r) {
  json robots = json::array();
  for (const auto& p : r.per_robot)
    robots.push_back({{"id", p.id},
                      {"final_state", std::string(explore::to_string(p.final_state))},
                      {"final_position", echo_cell(p.final_position)},
                      {"final_battery_s", p.final_battery_s},
                      {"samples_held", p.samples_held},
                      {"cells_moved", p.stats.cells_moved},
                      {"targets_reached", p.stats.targets_reached},
                      {"samples_collected", p.stats.samples_collected},
                      {"samples_delivered", p.stats.samples_delivered},
                      {"charges", p.stats.charges},
                      {"min_battery_s", p.stats.min_battery_s}});
  return {{"steps", r.steps},
          {"tick_s", r.tick_s},
          {"elapsed_s", r.elapsed_s},
          {"coverage_fraction", r.coverage_fraction},
          {"completed", r.completed},
          {"outcome", r.outcome},
          {"reachable_cells", r.reachable_cells},
          {"explored_cells", r.explored_cells},
          {"samples_delivered", r.samples_delivered},
          {"energy_regen_wh", r.energy_regen_wh},
          {"robots", robots}};
}

json to_json(const program::BudgetRollup& b) {
  return {{"total_mass_kg", b.total_mass_kg},
          {"total_volume_m3", b.total_volume_m3},
          {"peak_power_w", b.peak_power_w},
          {"platform_mass_kg", b.platform_mass_kg},
          {"pass", b.pass},
          {"margins",
           {{"payload_mass_kg", b.margins.payload_mass_kg},
            {"platform_mass_kg", b.margins.platform_mass_kg},
            {"volume_m3", b.margins.volume_m3}}}};
}

json to_json(const program::ScheduleCheck& s) {
  json fs = json::array();
  for (const auto& f : s.findings) fs.push_back({{"rule", f.rule}, {"detail", f.detail}});
  return {{"ok", s.ok}, {"findings", fs}};
}

json to_json(const mission::GerminationTrial& g) {
  return {{"n_seeds", g.n_seeds}, {"p_germinate", g.p_germinate}, {"seed", g.seed},
          {"germinated", g.germinated}, {"rate", g.rate()}};
}

json to_json(const mission::MissionReport& r) {
  json events = json::array();
  for (const auto& e : r.events)
    events.push_back({{"sol", e.sol},
                      {"event", std::string(mission::to_string(e.event))},
                      {"from", std::string(mission::to_string(e.from))},
                      {"to", std::string(mission::to_string(e.to))},
                      {"implicit", e.implicit}});
  json sols = json::array();
  for (const auto& s : r.sols)
    sols.push_back({{"sol", s.sol},
                    {"phase", std::string(mission::to_string(s.phase))},
                    {"cave_fraction", s.cave_fraction},
                    {"dose_msv", s.dose_msv},
                    {"initial_soc_wh", s.initial_soc_wh},
                    {"final_soc_wh", s.final_soc_wh},
                    {"shed_wh", s.shed_wh},
                    {"regen_wh", s.regen_wh},
                    {"violations", s.violations},
                    {"hard_violations", s.hard_violations}});
  json explorations = json::array();
  for (const auto& e : r.explorations) explorations.push_back(to_json(e));
  return {{"final_state",
           {{"phase", std::string(mission::to_string(r.final_state.phase))},
            {"sol", r.final_state.sol},
            {"tubes_explored", r.final_state.tubes_explored}}},
          {"events", events},
          {"state_sequence", phase_names(r.state_sequence)},
          {"phases_visited", phase_names(r.phases_visited)},
          {"sols", sols},
          {"explorations", explorations},
          {"germination", r.germination ? to_json(*r.germination) : json(nullptr)},
          {"total_dose_msv", r.total_dose_msv},
          {"regen_credited_wh", r.regen_credited_wh},
          {"transit_to_settlement", r.transit_to_settlement}};
}

json cost_tree(const program::WbsNode& node) {
  json j = {{"name", node.name}, {"level", node.level}, {"cost_usd", program::rollup_cost(node)}};
  if (!node.note.empty()) j["note"] = node.note;
  if (!node.is_leaf()) {
    j["children"] = json::array();
    for (const auto& c : node.children) j["children"].push_back(cost_tree(c));
  }
  return j;
}

std::string soc_trace_csv(const energy::SocTrace& t) {
  std::ostringstream out;
  out.precision(17);
  out << "time_s,soc_wh,supply_w,demand_w,shed_w\n";
  for (const auto& s : t.samples)
    out << s.time_s << ',' << s.soc_wh << ',' << s.supply_w << ',' << s.demand_w << ',' << s.shed_w << '\n';
  return out.str();
}

} // namespace detail
} // namespace lavatube
