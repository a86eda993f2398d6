#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "fredsim/error.hpp"

#ifndef SIMULATE_VERSION
#define SIMULATE_VERSION "unknown"
#endif

namespace simulate {

using fredsim::ErrorKind;

namespace fs = std::filesystem;

namespace {

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fredsim::raise(ErrorKind::config, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fredsim::raise(ErrorKind::config, "cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

json base_metadata(const ExperimentConfig& cfg) {
  json m;
  m["tool"] = "simulate";
  m["version"] = SIMULATE_VERSION;
  m["config"] = resolved_json(cfg);
  m["rwa"] = rwa_json(cfg.params, cfg.hilbert);
  return m;
}

int exit_for(fredsim::ErrorClass c) {
  switch (c) {
    case fredsim::ErrorClass::parse: return exit_parse;
    case fredsim::ErrorClass::physics: return exit_physics;
    case fredsim::ErrorClass::numerical: return exit_numerical;
  }
  return exit_numerical;
}

json error_json(const std::exception& e) {
  if (const auto* fe = dynamic_cast<const fredsim::Error*>(&e)) {
    const char* cls = "numerical";
    if (fredsim::error_class(fe->kind()) == fredsim::ErrorClass::parse) cls = "parse";
    if (fredsim::error_class(fe->kind()) == fredsim::ErrorClass::physics) cls = "physics";
    return {{"error", cls}, {"kind", fredsim::kind_name(fe->kind())}, {"message", e.what()}};
  }
  return {{"error", "numerical"}, {"kind", "internal"}, {"message", e.what()}};
}

int exit_for(const std::exception& e) {
  if (const auto* fe = dynamic_cast<const fredsim::Error*>(&e)) return exit_for(fredsim::error_class(fe->kind()));
  return exit_numerical;
}

}  // namespace

std::string output_directory(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (!opts.out.empty()) return opts.out;
  if (!cfg.output.empty()) return cfg.output;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "simulate-out";
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) fredsim::raise(ErrorKind::config, "cannot write '" + path + "'");
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

int run_command(const std::string& config_path, const RunOptions& opts, std::ostream& out) {
  const ExperimentConfig cfg = resolve(read_config_file(config_path));
  if (cfg.sweep) return sweep_command(config_path, std::nullopt, std::nullopt, opts, out);
  const ExperimentResult res = run_experiment(cfg);
  const std::string dir = prepare_dir(output_directory(cfg, opts));
  const std::string csv = (fs::path(dir) / (cfg.experiment + ".csv")).string();
  write_csv(csv, res.table.columns(), res.table.rows());
  json meta = base_metadata(cfg);
  meta["report"] = res.report;
  meta["warnings"] = res.warnings;
  meta["rows"] = res.table.rows().size();
  write_json((fs::path(dir) / "metadata.json").string(), meta);
  out << csv << '\n';
  return exit_ok;
}

int sweep_command(const std::string& config_path, const std::optional<std::string>& axis,
                  const std::optional<std::string>& values, const RunOptions& opts, std::ostream& out) {
  ExperimentConfig cfg = resolve(read_config_file(config_path));
  if (axis.has_value() != values.has_value()) {
    fredsim::raise(ErrorKind::config, "--axis and --values go together");
  }
  if (axis) {
    SweepSpec s;
    s.axis = *axis;
    s.values = parse_list(*values, "--values");
    if (s.values.empty()) fredsim::raise(ErrorKind::config, "--values is empty");
    const auto& keys = param_keys();
    if (std::find(keys.begin(), keys.end(), s.axis) == keys.end()) {
      fredsim::raise(ErrorKind::config, "sweep axis '" + s.axis + "' is not a numeric [params] field");
    }
    cfg.sweep = s;
  }
  if (!cfg.sweep) fredsim::raise(ErrorKind::config, "sweep needs --axis/--values or a [sweep] section");
  const SweepSpec sweep = *cfg.sweep;
  const std::size_t n = sweep.values.size();

  struct Point {
    std::optional<ExperimentResult> result;
    std::optional<json> error;
    int code = exit_ok;
  };
  std::vector<Point> points(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        points[i].result = run_experiment(with_param(cfg, sweep.axis, sweep.values[i]));
      } catch (const std::exception& e) {
        points[i].error = error_json(e);
        points[i].code = exit_for(e);
      }
    }
  };
  const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // collector: output order is the axis order
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  json meta = base_metadata(cfg);
  json per_point = json::array();
  json failures = json::array();
  int code = exit_ok;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& pt = points[i];
    if (pt.error) {
      failures.push_back({{"point", i}, {"value", sweep.values[i]}, {"error", *pt.error}});
      if (code == exit_ok) code = pt.code;
      continue;
    }
    const ExperimentResult& r = *pt.result;
    if (columns.empty()) {
      columns = {"point", sweep.axis};
      columns.insert(columns.end(), r.table.columns().begin(), r.table.columns().end());
    }
    for (const auto& row : r.table.rows()) {
      std::vector<std::string> full = {std::to_string(i), format_number(sweep.values[i])};
      full.insert(full.end(), row.begin(), row.end());
      rows.push_back(std::move(full));
    }
    per_point.push_back({{"point", i}, {"value", sweep.values[i]}, {"report", r.report}, {"warnings", r.warnings}});
  }
  const std::string dir = prepare_dir(output_directory(cfg, opts));
  const std::string csv = (fs::path(dir) / (cfg.experiment + ".csv")).string();
  if (columns.empty()) columns = {"point", sweep.axis};
  write_csv(csv, columns, rows);
  meta["points"] = per_point;
  meta["failed_points"] = failures.size();
  meta["rows"] = rows.size();
  write_json((fs::path(dir) / "metadata.json").string(), meta);
  const std::string manifest = (fs::path(dir) / "failures.json").string();
  if (!failures.empty()) {
    write_json(manifest, failures);
  } else {
    std::error_code ec;
    fs::remove(manifest, ec);
  }
  out << csv << '\n';
  return code;
}

int check_command(const std::string& config_path, std::ostream& out) {
  const ExperimentConfig cfg = resolve(read_config_file(config_path));
  json j;
  j["config"] = resolved_json(cfg);
  j["rwa"] = rwa_json(cfg.params, cfg.hilbert);
  j["warnings"] = cfg.params.warnings();
  out << j.dump(2) << '\n';
  return exit_ok;
}

int report_error(const std::exception& e, std::ostream& err) {
  err << error_json(e).dump() << '\n';
  return exit_for(e);
}

}  // namespace simulate
