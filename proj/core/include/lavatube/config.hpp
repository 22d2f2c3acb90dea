#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lavatube/program.hpp"
#include "lavatube/scenario.hpp"

namespace lavatube {

struct ConfigIssue {
  std::string path; // dotted config path, e.g. "balloon.geometry"
  std::string message;
};

/// Every problem found in a config file, not just the first.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }
  bool mentions(std::string_view path) const;

private:
  std::vector<ConfigIssue> issues_;
};

/// Parses and validates a scenario. Missing blocks take the baseline
/// values; unknown keys are rejected. Relative map paths resolve against
/// `base_dir`.
MissionConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
MissionConfig load_config(const std::filesystem::path& path);

/// Normalized echo of a config (sorted keys, defaults filled in).
std::string config_echo(const MissionConfig& cfg);

/// Stand-alone WBS tree file: {"name", "level", "cost_usd", "note", "children"}.
program::WbsNode parse_wbs(std::string_view json_text);
program::WbsNode load_wbs(const std::filesystem::path& path);

} // namespace lavatube
