#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include <nlohmann/json.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Driven three-mode Fredkin system: experiments, sweeps and checks"};
  app.require_subcommand(1);

  simulate::RunOptions opts;
  std::string config;
  bool check_only = false;

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config, "config file")->required();
  run->add_option("--out", opts.out, "output directory (overrides the config and $SIMULATE_OUT_DIR)");
  run->add_option("--workers", opts.workers, "sweep workers")->check(CLI::PositiveNumber);
  run->add_flag("--check", check_only, "validate the config and print the RWA report only");

  std::string axis;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "run the experiment over one [params] axis");
  sweep->add_option("config", config, "config file")->required();
  sweep->add_option("--axis", axis, "numeric [params] field");
  sweep->add_option("--values", values, "comma-separated axis values");
  sweep->add_option("--out", opts.out, "output directory");
  sweep->add_option("--workers", opts.workers, "concurrent points")->check(CLI::PositiveNumber);
  sweep->add_flag("--check", check_only, "validate the config and print the RWA report only");

  auto* check = app.add_subcommand("check", "validate a config and print the RWA report");
  check->add_option("config", config, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::json j = {{"error", "parse"}, {"kind", "cli"}, {"message", e.what()}};
    std::cerr << j.dump() << '\n';
    return simulate::exit_parse;
  }

  try {
    if (check->parsed() || check_only) return simulate::check_command(config, std::cout);
    if (run->parsed()) return simulate::run_command(config, opts, std::cout);
    std::optional<std::string> ax = axis.empty() ? std::nullopt : std::optional<std::string>(axis);
    std::optional<std::string> vals = values.empty() ? std::nullopt : std::optional<std::string>(values);
    return simulate::sweep_command(config, ax, vals, opts, std::cout);
  } catch (const std::exception& e) {
    return simulate::report_error(e, std::cerr);
  }
}
