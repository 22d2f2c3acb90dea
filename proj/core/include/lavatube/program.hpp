#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lavatube::program {

/// Whole US dollars. Cost arithmetic never touches floating point.
using Usd = std::int64_t;

struct PayloadSpec {
  std::string name;
  double mass_kg = 0.0;
  double volume_m3 = 0.0;
  double power_w = 0.0;
  Usd wbs_cost_usd = 0;

  void validate() const;
};

/// Mastcam, RIMFAX, scout robot, gas chromatograph, mycotecture, greenhouse
/// and winch, with the masses, volumes and loads the design quotes.
std::vector<PayloadSpec> default_payload_registry();

struct BudgetLimits {
  double payload_mass_limit_kg = 1000.0;
  double platform_mass_limit_kg = 9000.0;
  double volume_limit_m3 = 8.0;
};

struct BudgetMargins {
  double payload_mass_kg = 0.0; // limit - total; negative means over
  double platform_mass_kg = 0.0;
  double volume_m3 = 0.0;
};

struct BudgetRollup {
  double total_mass_kg = 0.0;
  double total_volume_m3 = 0.0;
  double peak_power_w = 0.0; // every payload drawing at once
  double platform_mass_kg = 0.0;
  bool pass = true;
  BudgetMargins margins;
};

BudgetRollup rollup_budget(const std::vector<PayloadSpec>& payloads, const BudgetLimits& limits,
                           double platform_mass_kg = 0.0);

/// Cost tree node. Internal nodes carry no cost of their own.
struct WbsNode {
  std::string name;
  int level = 2;
  Usd cost_usd = 0;
  std::string note;
  std::vector<WbsNode> children;

  bool is_leaf() const noexcept { return children.empty(); }
};

/// Post-order exact sum of leaf costs. Throws DomainError on a negative
/// leaf, an internal node with its own cost, or int64 overflow.
Usd rollup_cost(const WbsNode& root);

/// Depth-first search by name.
const WbsNode* find_node(const WbsNode& root, std::string_view name);

/// Payload LCCE tree down to the per-element cost tables.
WbsNode default_wbs();

/// Parses quoted dollar amounts such as "$181.417.003", "$2.107.350,00",
/// "$193,500", "350" or "$174,2 million". Either '.' or ',' may group
/// thousands; a trailing one- or two-digit group is a decimal part, which
/// must be zero unless a "million" suffix scales it to whole dollars.
Usd parse_usd(std::string_view text);

/// people x years x rate, exact; throws DomainError on overflow.
std::uint64_t fte_estimate(std::uint64_t people, std::uint64_t years, std::uint64_t fte_per_person_year);

enum class PhaseCode { PreA, A, B, C, D, E, F };
std::string_view to_string(PhaseCode c);
/// Accepts "PreA", "Pre-A", "Pre A", "A" .. "F"; anything else is a DomainError.
PhaseCode phase_code_from_string(std::string_view s);

struct LifecyclePhase {
  PhaseCode code = PhaseCode::PreA;
  int start_year = 0;
};

/// Start years from the project GANTT chart ('22 .. '36).
std::vector<LifecyclePhase> default_lifecycle();

struct ScheduleFinding {
  std::string rule; // "ordering", "duplicate", "missing_phase_D", "launch_before_D", "deadline"
  std::string detail;
};

struct ScheduleCheck {
  bool ok = true;
  std::vector<ScheduleFinding> findings;
};

/// Phases must start in strictly increasing years along PreA..F; launch
/// must fall at or after the start of phase D and no later than deadline.
ScheduleCheck validate_schedule(const std::vector<LifecyclePhase>& phases, int launch_year, int deadline);

} // namespace lavatube::program
