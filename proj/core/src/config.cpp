#include "lavatube/config.hpp"
#include <type_traits>
#include <algorithm>

#include <array>
#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "lavatube/errors.hpp"

namespace lavatube {

using detail::json;
using mission::MissionEvent;
using mission::MissionPhase;

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid config:";
        for (const auto& i : issues) msg += "\n  " + (i.path.empty() ? std::string("<root>") : i.path) + ": " + i.message;
        return msg;
      }()),
      issues_(std::move(issues)) {}

bool ConfigError::mentions(std::string_view path) const {
  for (const auto& i : issues_)
    if (i.path == path) return true;
  return false;
}

namespace {

constexpr std::array<std::pair<const char*, double MarsEnvironment::*>, 11> kEnvFields{{
    {"gravity", &MarsEnvironment::gravity},
    {"ambient_density", &MarsEnvironment::ambient_density},
    {"surface_pressure", &MarsEnvironment::surface_pressure},
    {"gas_constant", &MarsEnvironment::gas_constant},
    {"ambient_temperature", &MarsEnvironment::ambient_temperature},
    {"day_high_c", &MarsEnvironment::day_high_c},
    {"night_low_c", &MarsEnvironment::night_low_c},
    {"sol_length_s", &MarsEnvironment::sol_length_s},
    {"night_duration_s", &MarsEnvironment::night_duration_s},
    {"dose_surface_msv", &MarsEnvironment::dose_surface_msv},
    {"dose_cave_msv", &MarsEnvironment::dose_cave_msv},
}};

std::string join(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : base + "." + std::string(key);
}

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

class Reader {
public:
  std::vector<ConfigIssue> issues;

  void error(std::string path, std::string msg) { issues.push_back({std::move(path), std::move(msg)}); }

  template <class F>
  bool guard(const std::string& path, F&& f) {
    try {
      f();
      return true;
    } catch (const std::exception& e) {
      error(path, e.what());
      return false;
    }
  }

  bool is_object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    error(path, "expected an object");
    return false;
  }

  bool is_array(const json& j, const std::string& path) {
    if (j.is_array()) return true;
    error(path, "expected an array");
    return false;
  }

  void allow(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
    for (const auto& [k, v] : obj.items()) {
      bool known = false;
      for (auto key : keys) known |= key == k;
      if (!known) error(join(path, k), "unknown key");
    }
  }

  void number(const json& obj, const std::string& path, const char* key, double& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number()) return error(join(path, key), "expected a number");
    out = v.get<double>();
  }

  void integer(const json& obj, const std::string& path, const char* key, int& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) return error(join(path, key), "expected an integer");
    out = v.get<int>();
  }

  void unsigned_integer(const json& obj, const std::string& path, const char* key, std::uint64_t& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      return error(join(path, key), "expected a non-negative integer");
    out = v.get<std::uint64_t>();
  }

  void size(const json& obj, const std::string& path, const char* key, std::size_t& out) {
    std::uint64_t tmp = out;
    unsigned_integer(obj, path, key, tmp);
    out = static_cast<std::size_t>(tmp);
  }

  void boolean(const json& obj, const std::string& path, const char* key, bool& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) return error(join(path, key), "expected true or false");
    out = v.get<bool>();
  }

  bool string(const json& obj, const std::string& path, const char* key, std::string& out) {
    if (!obj.contains(key)) return false;
    const auto& v = obj.at(key);
    if (!v.is_string()) {
      error(join(path, key), "expected a string");
      return false;
    }
    out = v.get<std::string>();
    return true;
  }

  std::vector<MissionPhase> phases(const json& obj, const std::string& path, const char* key,
                                   std::vector<MissionPhase> fallback) {
    if (!obj.contains(key)) return fallback;
    const auto p = join(path, key);
    const auto& arr = obj.at(key);
    if (!is_array(arr, p)) return fallback;
    std::vector<MissionPhase> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) {
        error(index_path(p, i), "expected a phase name");
        continue;
      }
      guard(index_path(p, i), [&] { out.push_back(mission::mission_phase_from_string(arr[i].get<std::string>())); });
    }
    return out;
  }
};

void read_env(Reader& rd, const json& j, EnvBlock& out) {
  const std::string path = "env";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"preset", "overrides"});
  rd.string(j, path, "preset", out.preset);
  if (!rd.guard(join(path, "preset"), [&] { out.env = environment_preset(out.preset); })) return;
  if (j.contains("overrides")) {
    const auto op = join(path, "overrides");
    const auto& ov = j.at("overrides");
    if (rd.is_object(ov, op)) {
      for (const auto& [k, v] : ov.items()) {
        auto field = std::find_if(kEnvFields.begin(), kEnvFields.end(), [&](const auto& f) { return k == f.first; });
        if (field == kEnvFields.end()) {
          rd.error(join(op, k), "unknown key");
          continue;
        }
        if (!v.is_number()) {
          rd.error(join(op, k), "expected a number");
          continue;
        }
        out.overrides[k] = v.get<double>();
        out.env.*(field->second) = v.get<double>();
      }
    }
  }
  rd.guard(path, [&] { out.env.validate(); });
}

void read_balloon(Reader& rd, const json& j, BalloonBlock& out) {
  const std::string path = "balloon";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path,
           {"geometry", "lifting_gas_density", "surface_area_weight", "tether_length", "tether_weight_per_length",
            "scientific_payload_weight", "windmill_weight", "area_model", "lift_gas"});
  auto& c = out.config;
  bool geometry_ok = true;
  if (j.contains("geometry")) {
    const auto gp = join(path, "geometry");
    const auto& g = j.at("geometry");
    if (rd.is_object(g, gp)) {
      rd.allow(g, gp, {"outer_radius", "inner_radius", "length"});
      rd.number(g, gp, "outer_radius", c.geometry.outer_radius);
      rd.number(g, gp, "inner_radius", c.geometry.inner_radius);
      rd.number(g, gp, "length", c.geometry.length);
      geometry_ok = rd.guard(gp, [&] { c.geometry.validate(); });
    }
  }
  rd.number(j, path, "lifting_gas_density", c.gas_density);
  rd.number(j, path, "surface_area_weight", c.hull_areal_density);
  rd.number(j, path, "tether_length", c.tether_length);
  rd.number(j, path, "tether_weight_per_length", c.tether_linear_density);
  rd.number(j, path, "scientific_payload_weight", c.payload_mass);
  rd.number(j, path, "windmill_weight", c.turbine_mass);
  std::string model;
  if (rd.string(j, path, "area_model", model))
    rd.guard(join(path, "area_model"), [&] { c.area_model = aerostat::area_model_from_string(model); });
  if (j.contains("lift_gas")) {
    const auto lp = join(path, "lift_gas");
    const auto& lg = j.at("lift_gas");
    if (lg.is_string()) {
      rd.guard(lp, [&] { out.lift_gas = aerostat::lift_gas_by_name(lg.get<std::string>()); });
    } else if (rd.is_object(lg, lp)) {
      rd.allow(lg, lp, {"name", "molar_mass"});
      rd.string(lg, lp, "name", out.lift_gas.name);
      rd.number(lg, lp, "molar_mass", out.lift_gas.molar_mass);
      if (!(out.lift_gas.molar_mass > 0.0)) rd.error(join(lp, "molar_mass"), "molar mass must be > 0");
    }
  }
  if (geometry_ok) rd.guard(path, [&] { c.validate(); });
}

void read_winch(Reader& rd, const json& j, energy::WinchSpec& w) {
  const std::string path = "winch";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"payload_mass", "line_speed", "depth", "motor_margin", "regen_efficiency"});
  rd.number(j, path, "payload_mass", w.payload_mass);
  rd.number(j, path, "line_speed", w.line_speed);
  rd.number(j, path, "depth", w.depth);
  rd.number(j, path, "motor_margin", w.motor_margin);
  rd.number(j, path, "regen_efficiency", w.regen_efficiency);
  rd.guard(path, [&] { w.validate(); });
}

void read_enclosure(Reader& rd, const json& j, thermal::GlazedEnclosure& e) {
  const std::string path = "enclosure";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"glazed_area", "u_value", "target_temp_c"});
  rd.number(j, path, "glazed_area", e.glazed_area);
  rd.number(j, path, "u_value", e.u_value);
  rd.number(j, path, "target_temp_c", e.target_temp_c);
  rd.guard(path, [&] { e.validate(); });
}

void read_avionics(Reader& rd, const json& j, AvionicsBlock& a) {
  const std::string path = "avionics";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"min_ok_c", "max_ok_c", "heater_power_w", "heater_delta_c", "heater_on", "sample_step_s"});
  rd.number(j, path, "min_ok_c", a.envelope.min_ok_c);
  rd.number(j, path, "max_ok_c", a.envelope.max_ok_c);
  rd.number(j, path, "heater_power_w", a.envelope.heater_power_w);
  rd.number(j, path, "heater_delta_c", a.envelope.heater_delta_c);
  rd.boolean(j, path, "heater_on", a.heater_on);
  rd.number(j, path, "sample_step_s", a.sample_step_s);
  rd.guard(path, [&] { a.envelope.validate(); });
  if (!(a.sample_step_s > 0.0)) rd.error(join(path, "sample_step_s"), "must be > 0");
}

void read_power(Reader& rd, const json& j, PowerBlock& p, const MarsEnvironment& env) {
  const std::string path = "power";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"timestep_s", "phase", "battery", "sources", "loads", "greenhouse_heater"});
  rd.number(j, path, "timestep_s", p.timestep_s);
  if (!(p.timestep_s > 0.0)) rd.error(join(path, "timestep_s"), "timestep must be > 0");
  std::string phase;
  if (rd.string(j, path, "phase", phase))
    rd.guard(join(path, "phase"), [&] { p.phase = mission::mission_phase_from_string(phase); });

  if (j.contains("battery")) {
    const auto bp = join(path, "battery");
    const auto& b = j.at("battery");
    if (rd.is_object(b, bp)) {
      rd.allow(b, bp, {"capacity_wh", "initial_soc_wh", "charge_efficiency", "discharge_efficiency"});
      rd.number(b, bp, "capacity_wh", p.battery.capacity_wh);
      rd.number(b, bp, "initial_soc_wh", p.battery.initial_soc_wh);
      rd.number(b, bp, "charge_efficiency", p.battery.charge_efficiency);
      rd.number(b, bp, "discharge_efficiency", p.battery.discharge_efficiency);
      rd.guard(bp, [&] { p.battery.validate(); });
    }
  }

  if (j.contains("sources")) {
    const auto sp = join(path, "sources");
    const auto& arr = j.at("sources");
    p.sources.clear();
    if (rd.is_array(arr, sp)) {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto ip = index_path(sp, i);
        const auto& s = arr[i];
        if (!rd.is_object(s, ip)) continue;
        rd.allow(s, ip, {"name", "kind", "rating_w", "event_energy_wh", "event_times_s", "wind_speed_mps",
                         "swept_area_m2", "power_coefficient"});
        energy::PowerSource src;
        if (!rd.string(s, ip, "name", src.name)) rd.error(join(ip, "name"), "required");
        std::string kind = "Constant";
        rd.string(s, ip, "kind", kind);
        rd.guard(join(ip, "kind"), [&] { src.kind = energy::source_kind_from_string(kind); });
        rd.number(s, ip, "rating_w", src.rating_w);
        rd.number(s, ip, "event_energy_wh", src.event_energy_wh);
        if (s.contains("event_times_s")) {
          const auto& times = s.at("event_times_s");
          if (rd.is_array(times, join(ip, "event_times_s")))
            for (const auto& t : times) {
              if (t.is_number())
                src.event_times_s.push_back(t.get<double>());
              else
                rd.error(join(ip, "event_times_s"), "expected numbers");
            }
        }
        rd.number(s, ip, "wind_speed_mps", src.wind_speed_mps);
        rd.number(s, ip, "swept_area_m2", src.swept_area_m2);
        rd.number(s, ip, "power_coefficient", src.power_coefficient);
        rd.guard(ip, [&] { src.validate(); });
        p.sources.push_back(std::move(src));
      }
    }
  }

  if (j.contains("loads")) {
    const auto lp = join(path, "loads");
    const auto& arr = j.at("loads");
    p.loads.clear();
    if (rd.is_array(arr, lp)) {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto ip = index_path(lp, i);
        const auto& l = arr[i];
        if (!rd.is_object(l, ip)) continue;
        rd.allow(l, ip, {"name", "power_w", "start_s", "end_s", "priority", "sheddable", "phases"});
        LoadSpec spec;
        spec.load.end_s = env.sol_length_s;
        if (!rd.string(l, ip, "name", spec.load.name)) rd.error(join(ip, "name"), "required");
        rd.number(l, ip, "power_w", spec.load.power_w);
        rd.number(l, ip, "start_s", spec.load.start_s);
        rd.number(l, ip, "end_s", spec.load.end_s);
        rd.integer(l, ip, "priority", spec.load.priority);
        rd.boolean(l, ip, "sheddable", spec.load.sheddable);
        spec.phases = rd.phases(l, ip, "phases", {});
        rd.guard(ip, [&] { spec.load.validate(env.sol_length_s); });
        p.loads.push_back(std::move(spec));
      }
    }
  }

  if (j.contains("greenhouse_heater")) {
    const auto gp = join(path, "greenhouse_heater");
    const auto& g = j.at("greenhouse_heater");
    if (rd.is_object(g, gp)) {
      rd.allow(g, gp, {"enabled", "priority", "sheddable", "phases"});
      auto& gh = p.greenhouse_heater;
      rd.boolean(g, gp, "enabled", gh.enabled);
      rd.integer(g, gp, "priority", gh.priority);
      rd.boolean(g, gp, "sheddable", gh.sheddable);
      gh.phases = rd.phases(g, gp, "phases", gh.phases);
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void read_exploration(Reader& rd, const json& j, ExplorationBlock& ex, const std::filesystem::path& base_dir,
                      const energy::WinchSpec& winch) {
  const std::string path = "exploration";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"map_file", "generator", "resolution_m", "robots", "station", "max_steps", "trace",
                     "required_drop_height_m", "required_obstacle_height_m"});
  rd.number(j, path, "resolution_m", ex.resolution_m);
  if (!(ex.resolution_m > 0.0)) rd.error(join(path, "resolution_m"), "must be > 0");

  if (j.contains("map_file") && j.contains("generator"))
    rd.error(path, "map_file and generator are mutually exclusive");

  std::string map_file;
  if (rd.string(j, path, "map_file", map_file)) {
    std::filesystem::path mp(map_file);
    if (mp.is_relative() && !base_dir.empty()) mp = base_dir / mp;
    ex.map_file = mp.lexically_normal().string();
    ex.generator.reset();
    rd.guard(join(path, "map_file"), [&] { ex.map = explore::GridMap::parse(read_file(mp), ex.resolution_m); });
  }
  if (j.contains("generator")) {
    const auto gp = join(path, "generator");
    const auto& g = j.at("generator");
    if (rd.is_object(g, gp)) {
      rd.allow(g, gp, {"seed", "width", "height", "obstacle_density"});
      TubeGenerator gen = ex.generator.value_or(TubeGenerator{});
      rd.unsigned_integer(g, gp, "seed", gen.seed);
      rd.integer(g, gp, "width", gen.width);
      rd.integer(g, gp, "height", gen.height);
      rd.number(g, gp, "obstacle_density", gen.obstacle_density);
      if (gen.width < 1 || gen.height < 1) rd.error(gp, "map dimensions must be >= 1");
      if (!(gen.obstacle_density >= 0.0 && gen.obstacle_density < 1.0))
        rd.error(join(gp, "obstacle_density"), "must be in [0, 1)");
      ex.generator = gen;
      ex.map.reset();
      ex.map_file.reset();
    }
  }
  rd.number(j, path, "required_drop_height_m", ex.required_drop_height_m);
  rd.number(j, path, "required_obstacle_height_m", ex.required_obstacle_height_m);

  if (j.contains("robots")) {
    const auto rp = join(path, "robots");
    const auto& arr = j.at("robots");
    ex.robots.clear();
    if (rd.is_array(arr, rp)) {
      if (arr.empty()) rd.error(rp, "at least one robot required");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto ip = index_path(rp, i);
        const auto& r = arr[i];
        if (!rd.is_object(r, ip)) continue;
        rd.allow(r, ip, {"id", "module_count", "battery", "battery_full_s", "speed_mps", "max_obstacle_height_m",
                         "tested_drop_height_m"});
        explore::ScoutRobot robot;
        if (!rd.string(r, ip, "id", robot.id)) rd.error(join(ip, "id"), "required");
        rd.integer(r, ip, "module_count", robot.module_count);
        std::string battery = "single";
        if (rd.string(r, ip, "battery", battery)) {
          if (battery == "single")
            robot.battery_full_s = explore::kSingleBatteryS;
          else if (battery == "double")
            robot.battery_full_s = explore::kDoubleBatteryS;
          else
            rd.error(join(ip, "battery"), "expected \"single\" or \"double\"");
        }
        rd.number(r, ip, "battery_full_s", robot.battery_full_s);
        robot.battery_s = robot.battery_full_s;
        rd.number(r, ip, "speed_mps", robot.speed_mps);
        rd.number(r, ip, "max_obstacle_height_m", robot.max_obstacle_height_m);
        rd.number(r, ip, "tested_drop_height_m", robot.tested_drop_height_m);
        rd.guard(ip, [&] {
          robot.validate();
          explore::check_capabilities(robot, ex.required_drop_height_m, ex.required_obstacle_height_m);
        });
        for (const auto& other : ex.robots)
          if (other.id == robot.id) rd.error(join(ip, "id"), "duplicate robot id");
        ex.robots.push_back(std::move(robot));
      }
    }
  } else {
    for (std::size_t i = 0; i < ex.robots.size(); ++i)
      rd.guard(index_path(join(path, "robots"), i), [&] {
        explore::check_capabilities(ex.robots[i], ex.required_drop_height_m, ex.required_obstacle_height_m);
      });
  }

  if (j.contains("station")) {
    const auto sp = join(path, "station");
    const auto& s = j.at("station");
    if (rd.is_object(s, sp)) {
      rd.allow(s, sp, {"charge_time_s", "reserve_factor", "descents", "sample_mass_kg", "sample_every_targets"});
      rd.number(s, sp, "charge_time_s", ex.station.charge_time_s);
      rd.number(s, sp, "reserve_factor", ex.station.reserve_factor);
      rd.integer(s, sp, "descents", ex.station.descents);
      rd.number(s, sp, "sample_mass_kg", ex.station.sample_mass_kg);
      rd.integer(s, sp, "sample_every_targets", ex.station.sample_every_targets);
    }
  }
  ex.station.winch = winch;
  rd.guard(join(path, "station"), [&] { ex.station.validate(); });

  rd.size(j, path, "max_steps", ex.max_steps);
  if (ex.max_steps == 0) rd.error(join(path, "max_steps"), "must be > 0");
  rd.boolean(j, path, "trace", ex.trace);
}

void read_wbs_node(Reader& rd, const json& j, const std::string& path, program::WbsNode& node) {
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"name", "level", "cost_usd", "note", "children"});
  if (!rd.string(j, path, "name", node.name)) rd.error(join(path, "name"), "required");
  rd.integer(j, path, "level", node.level);
  rd.string(j, path, "note", node.note);
  if (j.contains("cost_usd")) {
    const auto& c = j.at("cost_usd");
    const auto cp = join(path, "cost_usd");
    if (c.is_number_integer())
      node.cost_usd = c.get<program::Usd>();
    else if (c.is_string())
      rd.guard(cp, [&] { node.cost_usd = program::parse_usd(c.get<std::string>()); });
    else
      rd.error(cp, "expected integer dollars or a dollar string");
  }
  if (j.contains("children")) {
    const auto cp = join(path, "children");
    const auto& arr = j.at("children");
    if (rd.is_array(arr, cp)) {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        program::WbsNode child;
        child.level = node.level + 1;
        read_wbs_node(rd, arr[i], index_path(cp, i), child);
        node.children.push_back(std::move(child));
      }
    }
  }
}

void read_program(Reader& rd, const json& j, ProgramBlock& p) {
  const std::string path = "program";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"payloads", "limits", "platform_mass_kg", "wbs", "phases", "launch_year", "deadline", "fte"});
  if (j.contains("payloads")) {
    const auto pp = join(path, "payloads");
    const auto& arr = j.at("payloads");
    p.payloads.clear();
    if (rd.is_array(arr, pp)) {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto ip = index_path(pp, i);
        const auto& o = arr[i];
        if (!rd.is_object(o, ip)) continue;
        rd.allow(o, ip, {"name", "mass_kg", "volume_m3", "power_w", "wbs_cost_usd"});
        program::PayloadSpec spec;
        if (!rd.string(o, ip, "name", spec.name)) rd.error(join(ip, "name"), "required");
        rd.number(o, ip, "mass_kg", spec.mass_kg);
        rd.number(o, ip, "volume_m3", spec.volume_m3);
        rd.number(o, ip, "power_w", spec.power_w);
        if (o.contains("wbs_cost_usd")) {
          const auto& c = o.at("wbs_cost_usd");
          if (c.is_number_integer())
            spec.wbs_cost_usd = c.get<program::Usd>();
          else if (c.is_string())
            rd.guard(join(ip, "wbs_cost_usd"), [&] { spec.wbs_cost_usd = program::parse_usd(c.get<std::string>()); });
          else
            rd.error(join(ip, "wbs_cost_usd"), "expected integer dollars or a dollar string");
        }
        rd.guard(ip, [&] { spec.validate(); });
        p.payloads.push_back(std::move(spec));
      }
    }
  }
  if (j.contains("limits")) {
    const auto lp = join(path, "limits");
    const auto& l = j.at("limits");
    if (rd.is_object(l, lp)) {
      rd.allow(l, lp, {"payload_mass_limit_kg", "platform_mass_limit_kg", "volume_limit_m3"});
      rd.number(l, lp, "payload_mass_limit_kg", p.limits.payload_mass_limit_kg);
      rd.number(l, lp, "platform_mass_limit_kg", p.limits.platform_mass_limit_kg);
      rd.number(l, lp, "volume_limit_m3", p.limits.volume_limit_m3);
    }
  }
  rd.number(j, path, "platform_mass_kg", p.platform_mass_kg);
  if (j.contains("wbs")) {
    program::WbsNode root;
    read_wbs_node(rd, j.at("wbs"), join(path, "wbs"), root);
    rd.guard(join(path, "wbs"), [&] { program::rollup_cost(root); });
    p.wbs = std::move(root);
  }
  if (j.contains("phases")) {
    const auto pp = join(path, "phases");
    const auto& arr = j.at("phases");
    p.phases.clear();
    if (rd.is_array(arr, pp)) {
      if (arr.empty()) rd.error(pp, "at least one phase required");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto ip = index_path(pp, i);
        const auto& o = arr[i];
        if (!rd.is_object(o, ip)) continue;
        rd.allow(o, ip, {"code", "start_year"});
        program::LifecyclePhase ph;
        std::string code;
        if (!rd.string(o, ip, "code", code)) rd.error(join(ip, "code"), "required");
        else rd.guard(join(ip, "code"), [&] { ph.code = program::phase_code_from_string(code); });
        rd.integer(o, ip, "start_year", ph.start_year);
        p.phases.push_back(ph);
      }
    }
  }
  rd.integer(j, path, "launch_year", p.launch_year);
  rd.integer(j, path, "deadline", p.deadline);
  if (j.contains("fte")) {
    const auto fp = join(path, "fte");
    const auto& f = j.at("fte");
    if (rd.is_object(f, fp)) {
      rd.allow(f, fp, {"people", "years", "fte_per_person_year"});
      rd.unsigned_integer(f, fp, "people", p.fte.people);
      rd.unsigned_integer(f, fp, "years", p.fte.years);
      rd.unsigned_integer(f, fp, "fte_per_person_year", p.fte.fte_per_person_year);
    }
  }
}

template <class T>
void read_phase_map(Reader& rd, const json& j, const std::string& path, std::map<MissionPhase, T>& out,
                    bool fraction) {
  if (!rd.is_object(j, path)) return;
  for (const auto& [k, v] : j.items()) {
    const auto kp = join(path, k);
    MissionPhase phase{};
    if (!rd.guard(kp, [&] { phase = mission::mission_phase_from_string(k); })) continue;
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) {
        rd.error(kp, "expected a number");
        continue;
      }
      const double x = v.template get<double>();
      if (fraction && !(x >= 0.0 && x <= 1.0)) rd.error(kp, "cave fraction outside [0, 1]");
      out[phase] = x;
    } else {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.template get<std::int64_t>() >= 0)) {
        rd.error(kp, "expected a non-negative integer");
        continue;
      }
      out[phase] = v.template get<T>();
    }
  }
}

void read_mission(Reader& rd, const json& j, MissionBlock& m) {
  const std::string path = "mission";
  if (!rd.is_object(j, path)) return;
  rd.allow(j, path, {"script", "phase_sols", "cave_fraction", "germination", "descent_time_s"});
  if (j.contains("script")) {
    const auto sp = join(path, "script");
    const auto& arr = j.at("script");
    m.script.clear();
    if (rd.is_array(arr, sp)) {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) {
          rd.error(index_path(sp, i), "expected an event name");
          continue;
        }
        rd.guard(index_path(sp, i), [&] { m.script.push_back(mission::mission_event_from_string(arr[i].get<std::string>())); });
      }
    }
  }
  if (j.contains("phase_sols")) read_phase_map(rd, j.at("phase_sols"), join(path, "phase_sols"), m.phase_sols, false);
  if (j.contains("cave_fraction"))
    read_phase_map(rd, j.at("cave_fraction"), join(path, "cave_fraction"), m.cave_fraction, true);
  if (j.contains("germination")) {
    const auto gp = join(path, "germination");
    const auto& g = j.at("germination");
    if (rd.is_object(g, gp)) {
      rd.allow(g, gp, {"n_seeds", "p_germinate", "seed"});
      rd.unsigned_integer(g, gp, "n_seeds", m.germination.n_seeds);
      rd.number(g, gp, "p_germinate", m.germination.p_germinate);
      rd.unsigned_integer(g, gp, "seed", m.germination.seed);
      if (!(m.germination.p_germinate >= 0.0 && m.germination.p_germinate <= 1.0))
        rd.error(join(gp, "p_germinate"), "must be in [0, 1]");
    }
  }
  rd.number(j, path, "descent_time_s", m.descent_time_s);
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    throw ConfigError(std::vector<ConfigIssue>{{"", "parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                                ": " + msg}});
  }
}

} // namespace

MissionConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  const json root = parse_json(text);
  Reader rd;
  MissionConfig cfg = baseline_config();
  if (!rd.is_object(root, "")) throw ConfigError(std::move(rd.issues));
  rd.allow(root, "",
           {"env", "balloon", "winch", "enclosure", "avionics", "power", "exploration", "program", "mission"});

  if (root.contains("env")) read_env(rd, root.at("env"), cfg.env);
  const double baseline_sol = MarsEnvironment{}.sol_length_s;
  if (cfg.env.env.sol_length_s != baseline_sol) {
    // Full-sol baseline loads follow the configured sol length.
    for (auto& spec : cfg.power.loads)
      if (spec.load.end_s == baseline_sol) spec.load.end_s = cfg.env.env.sol_length_s;
  }
  if (root.contains("balloon")) read_balloon(rd, root.at("balloon"), cfg.balloon);
  if (root.contains("winch")) read_winch(rd, root.at("winch"), cfg.winch);
  if (root.contains("enclosure")) read_enclosure(rd, root.at("enclosure"), cfg.enclosure);
  if (root.contains("avionics")) read_avionics(rd, root.at("avionics"), cfg.avionics);
  if (root.contains("power")) read_power(rd, root.at("power"), cfg.power, cfg.env.env);
  if (root.contains("exploration"))
    read_exploration(rd, root.at("exploration"), cfg.exploration, base_dir, cfg.winch);
  else
    cfg.exploration.station.winch = cfg.winch;
  if (root.contains("program")) read_program(rd, root.at("program"), cfg.program);
  if (root.contains("mission")) read_mission(rd, root.at("mission"), cfg.mission);

  if (!rd.issues.empty()) throw ConfigError(std::move(rd.issues));
  return cfg;
}

MissionConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::vector<ConfigIssue>{{"", e.what()}});
  }
  return parse_config(text, path.parent_path());
}

program::WbsNode parse_wbs(std::string_view text) {
  const json root = parse_json(text);
  Reader rd;
  program::WbsNode node;
  read_wbs_node(rd, root, "wbs", node);
  rd.guard("wbs", [&] { program::rollup_cost(node); });
  if (!rd.issues.empty()) throw ConfigError(std::move(rd.issues));
  return node;
}

program::WbsNode load_wbs(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::vector<ConfigIssue>{{"wbs", e.what()}});
  }
  return parse_wbs(text);
}

// ---------------------------------------------------------------------------
// Normalized echo

namespace detail {

json echo_env(const MarsEnvironment& env) {
  json j = json::object();
  for (const auto& [name, field] : kEnvFields) j[name] = env.*field;
  return j;
}

json echo_cell(explore::CellPos p) { return json::array({p.row, p.col}); }

json echo_wbs(const program::WbsNode& node) {
  json j = {{"name", node.name}, {"level", node.level}};
  if (node.is_leaf()) j["cost_usd"] = node.cost_usd;
  if (!node.note.empty()) j["note"] = node.note;
  if (!node.is_leaf()) {
    j["children"] = json::array();
    for (const auto& c : node.children) j["children"].push_back(echo_wbs(c));
  }
  return j;
}

namespace {

json echo_phases(const std::vector<MissionPhase>& phases) {
  json a = json::array();
  for (auto p : phases) a.push_back(std::string(mission::to_string(p)));
  return a;
}

} // namespace

json echo_config(const MissionConfig& cfg) {
  json j;
  json overrides = json::object();
  for (const auto& [k, v] : cfg.env.overrides) overrides[k] = v;
  j["env"] = {{"preset", cfg.env.preset}, {"overrides", overrides}};

  const auto& b = cfg.balloon.config;
  j["balloon"] = {
      {"geometry",
       {{"outer_radius", b.geometry.outer_radius}, {"inner_radius", b.geometry.inner_radius}, {"length", b.geometry.length}}},
      {"lifting_gas_density", b.gas_density},
      {"surface_area_weight", b.hull_areal_density},
      {"tether_length", b.tether_length},
      {"tether_weight_per_length", b.tether_linear_density},
      {"scientific_payload_weight", b.payload_mass},
      {"windmill_weight", b.turbine_mass},
      {"area_model", std::string(aerostat::to_string(b.area_model))},
      {"lift_gas", {{"name", cfg.balloon.lift_gas.name}, {"molar_mass", cfg.balloon.lift_gas.molar_mass}}},
  };

  const auto& w = cfg.winch;
  j["winch"] = {{"payload_mass", w.payload_mass}, {"line_speed", w.line_speed}, {"depth", w.depth},
                {"motor_margin", w.motor_margin}, {"regen_efficiency", w.regen_efficiency}};
  j["enclosure"] = {{"glazed_area", cfg.enclosure.glazed_area},
                    {"u_value", cfg.enclosure.u_value},
                    {"target_temp_c", cfg.enclosure.target_temp_c}};
  const auto& a = cfg.avionics;
  j["avionics"] = {{"min_ok_c", a.envelope.min_ok_c},       {"max_ok_c", a.envelope.max_ok_c},
                   {"heater_power_w", a.envelope.heater_power_w}, {"heater_delta_c", a.envelope.heater_delta_c},
                   {"heater_on", a.heater_on},              {"sample_step_s", a.sample_step_s}};

  const auto& p = cfg.power;
  json sources = json::array();
  for (const auto& s : p.sources) {
    json o = {{"name", s.name}, {"kind", std::string(energy::to_string(s.kind))}};
    switch (s.kind) {
    case energy::SourceKind::Constant:
    case energy::SourceKind::Trickle:
      o["rating_w"] = s.rating_w;
      break;
    case energy::SourceKind::WinchRegen:
      o["event_energy_wh"] = s.event_energy_wh;
      o["event_times_s"] = s.event_times_s;
      break;
    case energy::SourceKind::WindTurbine:
      o["wind_speed_mps"] = s.wind_speed_mps;
      o["swept_area_m2"] = s.swept_area_m2;
      o["power_coefficient"] = s.power_coefficient;
      break;
    }
    sources.push_back(o);
  }
  json loads = json::array();
  for (const auto& l : p.loads)
    loads.push_back({{"name", l.load.name},
                     {"power_w", l.load.power_w},
                     {"start_s", l.load.start_s},
                     {"end_s", l.load.end_s},
                     {"priority", l.load.priority},
                     {"sheddable", l.load.sheddable},
                     {"phases", echo_phases(l.phases)}});
  j["power"] = {
      {"timestep_s", p.timestep_s},
      {"phase", std::string(mission::to_string(p.phase))},
      {"battery",
       {{"capacity_wh", p.battery.capacity_wh},
        {"initial_soc_wh", p.battery.initial_soc_wh},
        {"charge_efficiency", p.battery.charge_efficiency},
        {"discharge_efficiency", p.battery.discharge_efficiency}}},
      {"sources", sources},
      {"loads", loads},
      {"greenhouse_heater",
       {{"enabled", p.greenhouse_heater.enabled},
        {"priority", p.greenhouse_heater.priority},
        {"sheddable", p.greenhouse_heater.sheddable},
        {"phases", echo_phases(p.greenhouse_heater.phases)}}},
  };

  const auto& ex = cfg.exploration;
  json robots = json::array();
  for (const auto& r : ex.robots)
    robots.push_back({{"id", r.id},
                      {"module_count", r.module_count},
                      {"battery_full_s", r.battery_full_s},
                      {"speed_mps", r.speed_mps},
                      {"max_obstacle_height_m", r.max_obstacle_height_m},
                      {"tested_drop_height_m", r.tested_drop_height_m}});
  json exj = {
      {"resolution_m", ex.resolution_m},
      {"robots", robots},
      {"station",
       {{"charge_time_s", ex.station.charge_time_s},
        {"reserve_factor", ex.station.reserve_factor},
        {"descents", ex.station.descents},
        {"sample_mass_kg", ex.station.sample_mass_kg},
        {"sample_every_targets", ex.station.sample_every_targets}}},
      {"max_steps", ex.max_steps},
      {"trace", ex.trace},
      {"required_drop_height_m", ex.required_drop_height_m},
      {"required_obstacle_height_m", ex.required_obstacle_height_m},
  };
  if (ex.map_file)
    exj["map_file"] = *ex.map_file;
  else {
    const auto gen = ex.generator.value_or(TubeGenerator{});
    exj["generator"] = {{"seed", gen.seed},
                        {"width", gen.width},
                        {"height", gen.height},
                        {"obstacle_density", gen.obstacle_density}};
  }
  j["exploration"] = exj;

  const auto& pr = cfg.program;
  json payloads = json::array();
  for (const auto& s : pr.payloads)
    payloads.push_back({{"name", s.name},
                        {"mass_kg", s.mass_kg},
                        {"volume_m3", s.volume_m3},
                        {"power_w", s.power_w},
                        {"wbs_cost_usd", s.wbs_cost_usd}});
  json phases = json::array();
  for (const auto& ph : pr.phases)
    phases.push_back({{"code", std::string(program::to_string(ph.code))}, {"start_year", ph.start_year}});
  j["program"] = {
      {"payloads", payloads},
      {"limits",
       {{"payload_mass_limit_kg", pr.limits.payload_mass_limit_kg},
        {"platform_mass_limit_kg", pr.limits.platform_mass_limit_kg},
        {"volume_limit_m3", pr.limits.volume_limit_m3}}},
      {"platform_mass_kg", pr.platform_mass_kg},
      {"wbs", echo_wbs(pr.wbs)},
      {"phases", phases},
      {"launch_year", pr.launch_year},
      {"deadline", pr.deadline},
      {"fte",
       {{"people", pr.fte.people}, {"years", pr.fte.years}, {"fte_per_person_year", pr.fte.fte_per_person_year}}},
  };

  const auto& m = cfg.mission;
  json script = json::array();
  for (auto e : m.script) script.push_back(std::string(mission::to_string(e)));
  json sols = json::object(), caves = json::object();
  for (const auto& [ph, n] : m.phase_sols) sols[std::string(mission::to_string(ph))] = n;
  for (const auto& [ph, f] : m.cave_fraction) caves[std::string(mission::to_string(ph))] = f;
  j["mission"] = {
      {"script", script},
      {"phase_sols", sols},
      {"cave_fraction", caves},
      {"germination",
       {{"n_seeds", m.germination.n_seeds}, {"p_germinate", m.germination.p_germinate}, {"seed", m.germination.seed}}},
      {"descent_time_s", m.descent_time_s},
  };
  return j;
}

} // namespace detail

std::string config_echo(const MissionConfig& cfg) { return detail::echo_config(cfg).dump(2); }

} // namespace lavatube
