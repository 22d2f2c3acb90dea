#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lavatube/findings.hpp"
#include "lavatube/scenario.hpp"

namespace lavatube {

inline constexpr std::string_view kToolName = "lavatube";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { Json, Csv };

struct RunOptions {
  bool strict = false;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::filesystem::path> wbs_file;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  int exit_code = 0;
  std::string report_json;                     // sorted keys, trailing newline
  std::vector<Finding> findings;
  std::map<std::string, std::string> csv_files; // file name -> contents
};

std::vector<std::string> subcommand_names();

/// Runs one subcommand against an already validated config. Throws
/// DomainError for an unknown subcommand; module failures surface as
/// ModuleError.
RunResult run(std::string_view subcommand, MissionConfig cfg, const RunOptions& opts);

/// run() plus writing report.json (and CSVs when the format asks for them)
/// into out_dir. Returns the exit status: 0 ok, 1 infeasible under strict,
/// 2 on any error (message written to `err`).
int run_to_dir(std::string_view subcommand, const std::filesystem::path& config_path,
               const std::filesystem::path& out_dir, const RunOptions& opts, std::string* err = nullptr);

} // namespace lavatube
