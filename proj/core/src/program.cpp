#include "lavatube/program.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

#include "lavatube/errors.hpp"

namespace lavatube::program {

void PayloadSpec::validate() const {
  if (!(mass_kg >= 0.0 && volume_m3 >= 0.0 && power_w >= 0.0) || wbs_cost_usd < 0)
    throw DomainError("payload '" + name + "': fields must be >= 0");
}

std::vector<PayloadSpec> default_payload_registry() {
  // Volumes from quoted envelope dimensions where given. The Farmbot's
  // 0.287 kWh/day is carried as its average draw; the winch rating is the
  // 1.7 kW motor.
  return {
      {"mastcam_z", 4.0, 2 * 0.11 * 0.12 * 0.26 + 0.22 * 0.12 * 0.05 + 0.10 * 0.10 * 0.07, 17.4, 193'500},
      {"rimfax", 3.0, 0.196 * 0.120 * 0.066, 10.0, 500'000},
      {"scout_robot", 18.0, 0.0, 0.0, 174'200'000},
      {"gas_chromatograph", 35.0, 0.46 * 0.27 * 0.29, 120.0, 205'453},
      {"mycotecture", 50.0, 1.0, 3.0, 2'104'100},
      {"greenhouse", 150.0, 3.0, 287.0 / 24.0, 2'106'600},
      {"winch", 17.0, 0.391 * 0.126 * 0.128, 1700.0, 0},
  };
}

BudgetRollup rollup_budget(const std::vector<PayloadSpec>& payloads, const BudgetLimits& limits,
                           double platform_mass_kg) {
  BudgetRollup out;
  for (const auto& p : payloads) {
    p.validate();
    out.total_mass_kg += p.mass_kg;
    out.total_volume_m3 += p.volume_m3;
    out.peak_power_w += p.power_w;
  }
  out.platform_mass_kg = platform_mass_kg;
  out.margins.payload_mass_kg = limits.payload_mass_limit_kg - out.total_mass_kg;
  out.margins.platform_mass_kg = limits.platform_mass_limit_kg - platform_mass_kg;
  out.margins.volume_m3 = limits.volume_limit_m3 - out.total_volume_m3;
  out.pass = out.total_mass_kg <= limits.payload_mass_limit_kg &&
             platform_mass_kg <= limits.platform_mass_limit_kg &&
             out.total_volume_m3 <= limits.volume_limit_m3;
  return out;
}

Usd rollup_cost(const WbsNode& node) {
  if (node.is_leaf()) {
    if (node.cost_usd < 0) throw DomainError("WBS leaf '" + node.name + "' has a negative cost");
    return node.cost_usd;
  }
  if (node.cost_usd != 0)
    throw DomainError("WBS node '" + node.name + "' has children and its own cost");
  Usd sum = 0;
  for (const auto& child : node.children) {
    if (__builtin_add_overflow(sum, rollup_cost(child), &sum))
      throw DomainError("WBS rollup overflows at '" + node.name + "'");
  }
  return sum;
}

const WbsNode* find_node(const WbsNode& root, std::string_view name) {
  if (root.name == name) return &root;
  for (const auto& c : root.children)
    if (const auto* hit = find_node(c, name)) return hit;
  return nullptr;
}

namespace {

WbsNode leaf(std::string name, int level, Usd cost, std::string note = {}) {
  return {std::move(name), level, cost, std::move(note), {}};
}

WbsNode group(std::string name, int level, std::vector<WbsNode> children) {
  return {std::move(name), level, 0, {}, std::move(children)};
}

WbsNode development_element(std::string name, int level, std::vector<std::pair<std::string, Usd>> items) {
  std::vector<WbsNode> leaves;
  for (auto& [n, c] : items) leaves.push_back(leaf(name + "/" + n, level + 1, c));
  return group(std::move(name), level, std::move(leaves));
}

} // namespace

WbsNode default_wbs() {
  auto mastcam = development_element("mastcam_z", 4,
                                     {{"kai2020_optical_sensor", 3'500},
                                      {"lenses", 50'000},
                                      {"other_components", 40'000},
                                      {"development_integration", 100'000}});
  auto rimfax = development_element("rimfax", 4,
                                    {{"bae_rad6000", 300'000},
                                     {"ground_sensor", 50'000},
                                     {"other_components", 50'000},
                                     {"development_integration", 100'000}});
  auto balloon = development_element("wind_power_balloon", 3,
                                     {{"lifting_gas_o2_tank", 350},
                                      {"surface_covering", 1'000},
                                      {"tether_system", 500},
                                      {"turbine_system", 500},
                                      {"scientific_payloads", 5'000},
                                      {"development", 2'000'000},
                                      {"integration", 100'000}});
  auto myco = development_element("mycotecture", 3,
                                  {{"grow_volume", 1'500},
                                   {"resource_supplementation", 1'500},
                                   {"nutrients", 500},
                                   {"temperature_control", 100},
                                   {"redundancy", 500},
                                   {"development", 2'000'000},
                                   {"integration", 100'000}});
  auto greenhouse = development_element("deployable_greenhouse", 3,
                                        {{"farmbot", 3'500},
                                         {"deployable_feature", 2'000},
                                         {"glass", 500},
                                         {"temperature_control", 100},
                                         {"redundancy", 500},
                                         {"development", 2'000'000},
                                         {"integration", 100'000}});
  return group("payloads", 2,
               {group("ground_penetrating_radar_camera", 3, {std::move(mastcam), std::move(rimfax)}),
                leaf("lava_tube_exploration_robot", 3, 174'200'000,
                     "development cost by analogy with the Pathfinder rover"),
                std::move(balloon), std::move(myco),
                leaf("gas_chromatograph", 3, 205'453, "component acquisition estimated at approximately 50,000 USD"),
                std::move(greenhouse)});
}

Usd parse_usd(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  std::erase(s, '$');

  Usd scale = 1;
  constexpr std::string_view kMillion = "million";
  if (s.size() > kMillion.size() && s.ends_with(kMillion)) {
    s.resize(s.size() - kMillion.size());
    scale = 1'000'000;
  }
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s.front())) ||
      !std::isdigit(static_cast<unsigned char>(s.back())))
    throw DomainError("not a dollar amount: '" + std::string(text) + "'");

  std::vector<std::string> groups(1);
  std::vector<char> seps;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      groups.back().push_back(c);
    } else if (c == '.' || c == ',') {
      if (groups.back().empty()) throw DomainError("malformed dollar amount: '" + std::string(text) + "'");
      seps.push_back(c);
      groups.emplace_back();
    } else {
      throw DomainError("unexpected character in dollar amount: '" + std::string(text) + "'");
    }
  }

  std::string fraction;
  if (!seps.empty() && groups.back().size() <= 2) {
    fraction = groups.back();
    groups.pop_back();
    const char decimal = seps.back();
    seps.pop_back();
    if (std::find(seps.begin(), seps.end(), decimal) != seps.end())
      throw DomainError("ambiguous separators in dollar amount: '" + std::string(text) + "'");
  }
  if (!seps.empty()) {
    if (std::adjacent_find(seps.begin(), seps.end(), std::not_equal_to<>()) != seps.end())
      throw DomainError("mixed thousands separators in: '" + std::string(text) + "'");
    if (groups.front().size() > 3)
      throw DomainError("bad digit grouping in dollar amount: '" + std::string(text) + "'");
    for (std::size_t i = 1; i < groups.size(); ++i)
      if (groups[i].size() != 3) throw DomainError("bad digit grouping in dollar amount: '" + std::string(text) + "'");
  }

  Usd whole = 0;
  auto push_digit = [&](Usd& acc, char d) {
    if (__builtin_mul_overflow(acc, Usd{10}, &acc) || __builtin_add_overflow(acc, Usd{d - '0'}, &acc))
      throw DomainError("dollar amount overflows: '" + std::string(text) + "'");
  };
  for (const auto& g : groups)
    for (char d : g) push_digit(whole, d);
  if (__builtin_mul_overflow(whole, scale, &whole))
    throw DomainError("dollar amount overflows: '" + std::string(text) + "'");

  if (!fraction.empty()) {
    // Scale the fractional digits into whole dollars; anything left over
    // would be cents, which the cost model does not carry.
    Usd frac = 0;
    for (char d : fraction) push_digit(frac, d);
    Usd denom = 1;
    for (std::size_t i = 0; i < fraction.size(); ++i) denom *= 10;
    if ((frac * scale) % denom != 0)
      throw DomainError("dollar amount has non-zero cents: '" + std::string(text) + "'");
    whole += frac * scale / denom;
  }
  return whole;
}

std::uint64_t fte_estimate(std::uint64_t people, std::uint64_t years, std::uint64_t rate) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(people, years, &out) || __builtin_mul_overflow(out, rate, &out))
    throw DomainError("FTE estimate overflows");
  return out;
}

namespace {
constexpr std::array<PhaseCode, 7> kLifecycle{PhaseCode::PreA, PhaseCode::A, PhaseCode::B, PhaseCode::C,
                                              PhaseCode::D,    PhaseCode::E, PhaseCode::F};
}

std::string_view to_string(PhaseCode c) {
  switch (c) {
  case PhaseCode::PreA: return "PreA";
  case PhaseCode::A: return "A";
  case PhaseCode::B: return "B";
  case PhaseCode::C: return "C";
  case PhaseCode::D: return "D";
  case PhaseCode::E: return "E";
  case PhaseCode::F: return "F";
  }
  return "PreA";
}

PhaseCode phase_code_from_string(std::string_view s) {
  if (s == "Pre-A" || s == "Pre A" || s == "PreA") return PhaseCode::PreA;
  for (auto c : kLifecycle)
    if (to_string(c) == s) return c;
  throw DomainError("unknown lifecycle phase code '" + std::string(s) + "'");
}

std::vector<LifecyclePhase> default_lifecycle() {
  return {{PhaseCode::PreA, 2022}, {PhaseCode::A, 2023}, {PhaseCode::B, 2024}, {PhaseCode::C, 2025},
          {PhaseCode::D, 2026},    {PhaseCode::E, 2031}, {PhaseCode::F, 2036}};
}

ScheduleCheck validate_schedule(const std::vector<LifecyclePhase>& phases, int launch_year, int deadline) {
  if (phases.empty()) throw DomainError("schedule needs at least one phase");
  ScheduleCheck out;
  auto flag = [&](std::string rule, std::string detail) {
    out.ok = false;
    out.findings.push_back({std::move(rule), std::move(detail)});
  };

  std::vector<LifecyclePhase> ordered = phases;
  std::stable_sort(ordered.begin(), ordered.end(), [](const LifecyclePhase& a, const LifecyclePhase& b) {
    return static_cast<int>(a.code) < static_cast<int>(b.code);
  });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    const auto& prev = ordered[i - 1];
    const auto& cur = ordered[i];
    if (prev.code == cur.code) {
      flag("duplicate", "phase " + std::string(to_string(cur.code)) + " appears more than once");
    } else if (cur.start_year <= prev.start_year) {
      flag("ordering", "phase " + std::string(to_string(cur.code)) + " starts in " + std::to_string(cur.start_year) +
                           ", not after phase " + std::string(to_string(prev.code)) + " (" +
                           std::to_string(prev.start_year) + ")");
    }
  }

  auto d = std::find_if(ordered.begin(), ordered.end(), [](const LifecyclePhase& p) { return p.code == PhaseCode::D; });
  if (d == ordered.end())
    flag("missing_phase_D", "no phase D start to anchor the launch");
  else if (launch_year < d->start_year)
    flag("launch_before_D", "launch " + std::to_string(launch_year) + " precedes phase D start " +
                                std::to_string(d->start_year));
  if (launch_year > deadline)
    flag("deadline", "launch " + std::to_string(launch_year) + " is after the " + std::to_string(deadline) + " deadline");
  return out;
}

} // namespace lavatube::program
