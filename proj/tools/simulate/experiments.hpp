#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace simulate {

// CSV table; every row ends with the resolved g0, xi_ss and RWA margins.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns);

  using Cell = std::string;
  static Cell cell(double v) { return format_number(v); }
  static Cell cell(int v) { return std::to_string(v); }
  static Cell cell(const std::string& v) { return v; }
  static Cell cell(const char* v) { return v; }

  void add(const fredsim::SystemParams& p, const fredsim::HilbertConfig& h, std::vector<Cell> cells);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

struct ExperimentResult {
  Table table;
  json report = json::object();  // experiment diagnostics, incl. "truncation"
  std::vector<std::string> warnings;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Per-mode Poisson tail estimate for the largest expected coherent amplitude.
json truncation_report(const fredsim::HilbertConfig& h, double beta_max, double eta_max);

json rwa_json(const fredsim::SystemParams& p, const fredsim::HilbertConfig& h);

}  // namespace simulate
