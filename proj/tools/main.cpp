#include <iostream>

#include <CLI11.hpp>

#include "lavatube/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lava tube settlement mission models"};
  app.set_version_flag("--version", std::string(lavatube::kToolVersion));
  app.require_subcommand(1, 1);

  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool strict = false;
  std::string format = "json";
  std::string wbs;

  std::string chosen;
  for (const auto& name : lavatube::subcommand_names()) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " model chain");
    sub->add_option("--config", config, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Directory for report.json and CSV traces");
    sub->add_option("--seed", seed, "Override every seed in the config");
    sub->add_flag("--strict", strict, "Exit 1 when an infeasible finding is reported");
    sub->add_option("--format", format, "Trace output format")->check(CLI::IsMember({"json", "csv"}));
    if (name == "cost") sub->add_option("--wbs", wbs, "Stand-alone WBS JSON file")->check(CLI::ExistingFile);
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  lavatube::RunOptions opts;
  opts.strict = strict;
  opts.format = format == "csv" ? lavatube::OutputFormat::Csv : lavatube::OutputFormat::Json;
  if (!wbs.empty()) opts.wbs_file = wbs;
  bool seed_given = false;
  for (auto* sub : app.get_subcommands())
    if (sub->count("--seed") > 0) seed_given = true;
  if (seed_given) opts.seed = seed;

  std::string err;
  const int rc = lavatube::run_to_dir(chosen, config, out_dir, opts, &err);
  if (rc == 2) std::cerr << "lavatube " << chosen << ": " << err << "\n";
  else std::cout << (std::filesystem::path(out_dir) / "report.json").string() << "\n";
  return rc;
}
