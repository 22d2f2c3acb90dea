#include "lavatube/runner.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "lavatube/config.hpp"
#include "lavatube/errors.hpp"

namespace lavatube {

using detail::json;

namespace {

constexpr std::array<std::string_view, 9> kSubcommands{"balloon", "winch",    "thermal", "power",  "explore",
                                                      "budget",  "cost",     "schedule", "mission"};

// Relative gap above which the configured ambient density is reported as
// inconsistent with an ideal CO2 atmosphere at the configured P and T.
constexpr double kAmbientDensityTolerance = 0.05;
// Relative gap tolerated between the configured lift-gas density and the
// ideal-gas value for the named gas.
constexpr double kLiftGasTolerance = 0.005;

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

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

struct Context {
  MissionConfig cfg;
  RunOptions opts;
  json report;
  std::vector<Finding> findings;
  std::map<std::string, std::string> csv;

  void add(FindingClass c, std::string module, std::string message) {
    findings.push_back({c, std::move(module), std::move(message)});
  }
};

void env_section(Context& ctx) {
  const auto& env = ctx.cfg.env.env;
  tagged("env", [&] { env.validate(); });
  const double co2 = aerostat::lift_gas_density(aerostat::carbon_dioxide(), env.surface_pressure,
                                                env.ambient_temperature, env.gas_constant);
  const double gap = (env.ambient_density - co2) / co2;
  ctx.report["env"] = {{"preset", ctx.cfg.env.preset},
                       {"values", detail::echo_env(env)},
                       {"ideal_co2_density", co2},
                       {"ambient_vs_ideal_co2_rel", gap},
                       {"day_duration_s", env.day_duration_s()},
                       {"peak_time_s", diurnal_peak_time(env)}};
  if (std::abs(gap) > kAmbientDensityTolerance)
    ctx.add(FindingClass::DiscrepancyVsPaper, "env",
            "configured ambient density " + fmt(env.ambient_density) + " kg/m^3 differs from ideal CO2 at " +
                fmt(env.surface_pressure) + " Pa / " + fmt(env.ambient_temperature) + " K (" + fmt(co2) +
                " kg/m^3) by " + fmt(gap * 100.0) + "%");
}

void radiation_section(Context& ctx) {
  const auto& env = ctx.cfg.env.env;
  json doses = json::object();
  for (double f : {0.0, 0.5, 1.0}) doses[fmt(f)] = tagged("env", [&] { return cumulative_dose(env, f, 1.0); });
  ctx.report["env"]["dose_per_period_by_cave_fraction"] = doses;
}

void balloon_cmd(Context& ctx) {
  env_section(ctx);
  const auto& env = ctx.cfg.env.env;
  const auto& b = ctx.cfg.balloon;
  const auto result = tagged("aerostat", [&] { return aerostat::buoyancy_margin(b.config, env); });
  const double ideal = tagged("aerostat", [&] {
    return aerostat::lift_gas_density(b.lift_gas, env.surface_pressure, env.ambient_temperature, env.gas_constant);
  });
  const double gas_gap = (b.config.gas_density - ideal) / ideal;

  json by_model = json::object();
  for (auto model : {aerostat::AreaModel::FullWetted, aerostat::AreaModel::OuterLateralOnly}) {
    auto c = b.config;
    c.area_model = model;
    by_model[std::string(aerostat::to_string(model))] = detail::to_json(aerostat::buoyancy_margin(c, env));
  }
  ctx.report["aerostat"] = {{"area_model", std::string(aerostat::to_string(b.config.area_model))},
                            {"buoyancy", detail::to_json(result)},
                            {"by_area_model", by_model},
                            {"lift_gas",
                             {{"name", b.lift_gas.name},
                              {"ideal_density", ideal},
                              {"configured_density", b.config.gas_density},
                              {"relative_gap", gas_gap}}}};
  if (!result.buoyant)
    ctx.add(FindingClass::DiscrepancyVsPaper, "aerostat",
            "overall density " + fmt(result.overall_density) + " kg/m^3 under " +
                std::string(aerostat::to_string(b.config.area_model)) + " is not below ambient " +
                fmt(env.ambient_density) + " kg/m^3; the balloon is not buoyant");
  if (std::abs(gas_gap) > kLiftGasTolerance)
    ctx.add(FindingClass::DiscrepancyVsPaper, "aerostat",
            "configured lift-gas density " + fmt(b.config.gas_density) + " differs from ideal " + b.lift_gas.name +
                " (" + fmt(ideal) + ") by " + fmt(gas_gap * 100.0) + "%");
}

void winch_cmd(Context& ctx) {
  const auto& env = ctx.cfg.env.env;
  const auto power = tagged("energy", [&] { return energy::winch_power(ctx.cfg.winch, env); });
  const double regen = tagged("energy", [&] { return energy::winch_regen_energy(ctx.cfg.winch, env); });
  ctx.report["energy"]["winch"] = {{"power", detail::to_json(power)}, {"regen_wh_per_descent", regen}};
}

void thermal_cmd(Context& ctx) {
  const auto& env = ctx.cfg.env.env;
  const auto& enc = ctx.cfg.enclosure;
  const double loss = tagged("thermal", [&] { return thermal::heat_loss(enc, env.night_low_c); });
  const double night = tagged("thermal", [&] { return thermal::night_heating_energy(enc, env); });
  const auto& av = ctx.cfg.avionics;
  const auto check = tagged("thermal", [&] {
    return thermal::avionics_envelope_check(env, av.envelope, av.heater_on, av.sample_step_s);
  });
  ctx.report["thermal"] = {{"greenhouse",
                            {{"night_heat_loss_w", loss},
                             {"night_heating_kwh", night},
                             {"night_duration_s", env.night_duration_s}}},
                           {"avionics",
                            {{"heater_on", av.heater_on},
                             {"heater_rise_c", av.envelope.heater_rise_c()},
                             {"check", detail::to_json(check)}}}};
  if (!check.ok)
    ctx.add(FindingClass::LimitViolation, "thermal",
            "avionics temperature leaves [" + fmt(av.envelope.min_ok_c) + ", " + fmt(av.envelope.max_ok_c) +
                "] C; worst margin " + fmt(check.worst_margin_c) + " C");
}

void power_cmd(Context& ctx) {
  const auto& env = ctx.cfg.env.env;
  const auto& p = ctx.cfg.power;
  const auto loads = tagged("energy", [&] { return loads_for_phase(ctx.cfg, p.phase); });
  const auto trace =
      tagged("energy", [&] { return energy::simulate_sol(p.sources, loads, p.battery, env, p.timestep_s); });
  const auto schedule =
      tagged("energy", [&] { return energy::schedule_loads(p.sources, loads, p.battery, env, p.timestep_s); });
  json load_list = json::array();
  for (const auto& l : loads)
    load_list.push_back({{"name", l.name},
                         {"power_w", l.power_w},
                         {"start_s", l.start_s},
                         {"end_s", l.end_s},
                         {"priority", l.priority},
                         {"sheddable", l.sheddable}});
  auto sim = detail::to_json(trace);
  json& e = ctx.report["energy"];
  e["phase"] = std::string(mission::to_string(p.phase));
  e["loads"] = load_list;
  e["violations"] = sim["violations"];
  sim.erase("violations");
  e["simulation"] = sim;
  e["schedule"] = detail::to_json(schedule);
  ctx.csv["soc_trace.csv"] = detail::soc_trace_csv(trace);

  if (trace.has_hard_violation()) {
    const auto& span = sim["hard_violation_span_s"];
    ctx.add(FindingClass::Infeasible, "energy",
            "non-sheddable loads are curtailed from t=" + fmt(span[0].get<double>()) + " s to t=" +
                fmt(span[1].get<double>()) + " s; supply plus storage cannot carry the load set");
  }
}

void explore_cmd(Context& ctx) {
  const auto& ex = ctx.cfg.exploration;
  const bool want_trace = ex.trace || ctx.opts.format == OutputFormat::Csv;
  auto map = tagged("tube_explorer", [&] { return tube_map(ex, 0); });
  json map_info = {{"width", map.width()},
                   {"height", map.height()},
                   {"resolution_m", map.resolution()},
                   {"entrance", detail::echo_cell(map.entrance())}};
  const auto rep = tagged("tube_explorer", [&] {
    return explore::run_exploration(std::move(map), ex.robots, ex.station, ctx.cfg.env.env, ex.max_steps, want_trace);
  });
  ctx.report["exploration"] = detail::to_json(rep);
  ctx.report["exploration"]["map"] = map_info;
  if (want_trace) ctx.csv["exploration_trace.csv"] = explore::trace_csv(rep);
  if (!rep.completed)
    ctx.add(FindingClass::LimitViolation, "tube_explorer",
            "exploration ended with outcome '" + rep.outcome + "' at coverage " + fmt(rep.coverage_fraction));
}

void budget_cmd(Context& ctx) {
  const auto& p = ctx.cfg.program;
  const auto b = tagged("program", [&] { return program::rollup_budget(p.payloads, p.limits, p.platform_mass_kg); });
  json payloads = json::array();
  for (const auto& s : p.payloads)
    payloads.push_back({{"name", s.name}, {"mass_kg", s.mass_kg}, {"volume_m3", s.volume_m3}, {"power_w", s.power_w}});
  ctx.report["program"]["budget"] = detail::to_json(b);
  ctx.report["program"]["budget"]["payloads"] = payloads;
  if (!b.pass) {
    std::string what;
    if (b.margins.payload_mass_kg < 0) what += " payload mass over by " + fmt(-b.margins.payload_mass_kg) + " kg;";
    if (b.margins.platform_mass_kg < 0) what += " platform mass over by " + fmt(-b.margins.platform_mass_kg) + " kg;";
    if (b.margins.volume_m3 < 0) what += " volume over by " + fmt(-b.margins.volume_m3) + " m^3;";
    if (!what.empty()) what.pop_back();
    ctx.add(FindingClass::LimitViolation, "program", "budget check failed:" + what);
  }
}

void cost_cmd(Context& ctx) {
  const auto& p = ctx.cfg.program;
  const program::WbsNode wbs = ctx.opts.wbs_file ? load_wbs(*ctx.opts.wbs_file) : p.wbs;
  const auto total = tagged("program", [&] { return program::rollup_cost(wbs); });
  const auto fte = tagged("program", [&] { return program::fte_estimate(p.fte.people, p.fte.years, p.fte.fte_per_person_year); });
  ctx.report["program"]["cost"] = {{"total_usd", total},
                                   {"wbs_source", ctx.opts.wbs_file ? ctx.opts.wbs_file->string() : "config"},
                                   {"tree", tagged("program", [&] { return detail::cost_tree(wbs); })}};
  ctx.report["program"]["fte"] = {{"people", p.fte.people},
                                  {"years", p.fte.years},
                                  {"fte_per_person_year", p.fte.fte_per_person_year},
                                  {"total", fte}};
}

void schedule_cmd(Context& ctx) {
  const auto& p = ctx.cfg.program;
  const auto check = tagged("program", [&] { return program::validate_schedule(p.phases, p.launch_year, p.deadline); });
  json phases = json::array();
  for (const auto& ph : p.phases)
    phases.push_back({{"code", std::string(program::to_string(ph.code))}, {"start_year", ph.start_year}});
  ctx.report["program"]["schedule"] = detail::to_json(check);
  ctx.report["program"]["schedule"]["phases"] = phases;
  ctx.report["program"]["schedule"]["launch_year"] = p.launch_year;
  ctx.report["program"]["schedule"]["deadline"] = p.deadline;
  for (const auto& f : check.findings) ctx.add(FindingClass::LimitViolation, "program", f.rule + ": " + f.detail);
}

void mission_cmd(Context& ctx) {
  balloon_cmd(ctx);
  radiation_section(ctx);
  winch_cmd(ctx);
  thermal_cmd(ctx);
  power_cmd(ctx);
  budget_cmd(ctx);
  cost_cmd(ctx);
  schedule_cmd(ctx);
  const auto rep = mission::run_mission(ctx.cfg);
  ctx.report["mission"] = detail::to_json(rep);
  json explorations = ctx.report["mission"]["explorations"];
  ctx.report["exploration"] = {{"tubes", explorations}};
  for (const auto& f : rep.findings) ctx.findings.push_back(f);
}

} // namespace

std::vector<std::string> subcommand_names() { return {kSubcommands.begin(), kSubcommands.end()}; }

RunResult run(std::string_view subcommand, MissionConfig cfg, const RunOptions& opts) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end())
    throw DomainError("unknown subcommand '" + std::string(subcommand) + "'");
  if (opts.seed) override_seeds(cfg, *opts.seed);

  Context ctx{std::move(cfg), opts, json::object(), {}, {}};
  if (subcommand == "balloon") balloon_cmd(ctx);
  else if (subcommand == "winch") winch_cmd(ctx);
  else if (subcommand == "thermal") thermal_cmd(ctx);
  else if (subcommand == "power") power_cmd(ctx);
  else if (subcommand == "explore") explore_cmd(ctx);
  else if (subcommand == "budget") budget_cmd(ctx);
  else if (subcommand == "cost") cost_cmd(ctx);
  else if (subcommand == "schedule") schedule_cmd(ctx);
  else mission_cmd(ctx);

  // Identical findings from overlapping chains are reported once.
  std::vector<Finding> unique;
  for (auto& f : ctx.findings)
    if (std::find(unique.begin(), unique.end(), f) == unique.end()) unique.push_back(std::move(f));

  json findings = json::array();
  for (const auto& f : unique) findings.push_back(detail::to_json(f));
  ctx.report["findings"] = findings;
  ctx.report["tool"] = {{"name", std::string(kToolName)}, {"version", std::string(kToolVersion)}};
  ctx.report["subcommand"] = std::string(subcommand);
  ctx.report["seed"] = opts.seed ? json(*opts.seed) : json(nullptr);
  ctx.report["config"] = detail::echo_config(ctx.cfg);

  RunResult res;
  res.report_json = ctx.report.dump(2) + "\n";
  res.findings = std::move(unique);
  res.csv_files = std::move(ctx.csv);
  res.exit_code = opts.strict && any_of_class(res.findings, FindingClass::Infeasible) ? 1 : 0;
  return res;
}

int run_to_dir(std::string_view subcommand, const std::filesystem::path& config_path,
               const std::filesystem::path& out_dir, const RunOptions& opts, std::string* err) {
  auto fail = [&](const std::string& msg) {
    if (err) *err = msg;
    return 2;
  };
  try {
    const MissionConfig cfg = load_config(config_path);
    RunResult res = run(subcommand, cfg, opts);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) return fail("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    auto write = [&](const std::string& name, const std::string& body) {
      const auto path = out_dir / name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << body;
      out.close();
      if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    };
    write("report.json", res.report_json);
    if (opts.format == OutputFormat::Csv || subcommand == "power")
      for (const auto& [name, body] : res.csv_files) write(name, body);
    return res.exit_code;
  } catch (const ModuleError& e) {
    return fail("[" + e.module() + "] " + e.what());
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

} // namespace lavatube
