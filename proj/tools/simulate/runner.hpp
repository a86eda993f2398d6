#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "experiments.hpp"

namespace simulate {

inline constexpr const char* kOutDirEnv = "SIMULATE_OUT_DIR";

enum ExitCode { exit_ok = 0, exit_parse = 2, exit_physics = 3, exit_numerical = 4 };

struct RunOptions {
  std::string out;  // --out; empty falls back to config, env, then "simulate-out"
  int workers = 1;
};

std::string output_directory(const ExperimentConfig& cfg, const RunOptions& opts);

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

int run_command(const std::string& config_path, const RunOptions& opts, std::ostream& out);
int sweep_command(const std::string& config_path, const std::optional<std::string>& axis,
                  const std::optional<std::string>& values, const RunOptions& opts, std::ostream& out);
int check_command(const std::string& config_path, std::ostream& out);

// One-line JSON error for stderr plus the matching exit code.
int report_error(const std::exception& e, std::ostream& err);

}  // namespace simulate
