#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fredsim/fock.hpp"
#include "fredsim/model.hpp"

namespace simulate {

using json = nlohmann::ordered_json;

// section -> key -> raw value, as written in the file
using RawConfig = std::map<std::string, std::map<std::string, std::string>>;

RawConfig read_config_file(const std::string& path);
RawConfig parse_config_text(const std::string& text);

struct SweepSpec {
  std::string axis;
  std::vector<double> values;
};

// Experiment options after defaults are filled in; values stay textual so
// they print back unchanged.
class Options {
 public:
  Options() = default;
  explicit Options(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
  bool is_auto(const std::string& key) const { return text(key) == "auto"; }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct ExperimentConfig {
  std::string experiment;
  std::string output;  // empty if not set in the file
  fredsim::SystemParams params;
  fredsim::HilbertConfig hilbert;
  std::size_t dimension_cap = fredsim::kDefaultDimensionCap;
  std::optional<SweepSpec> sweep;
  Options options;
  RawConfig raw;  // kept for sweep re-resolution
};

const std::vector<std::string>& experiment_names();
const std::vector<std::string>& param_keys();

// Throws fredsim::Error(config) on any unknown section/key or bad value.
ExperimentConfig resolve(const RawConfig& raw);

// Copy of cfg with one [params] key replaced, resolved again.
ExperimentConfig with_param(const ExperimentConfig& cfg, const std::string& key, double value);

json resolved_json(const ExperimentConfig& cfg);
// Inverse of resolved_json (the mode-c drive is re-derived from xi_ss).
RawConfig config_from_json(const json& j);

double parse_number(const std::string& text, const std::string& where);
std::vector<double> parse_list(const std::string& text, const std::string& where);
std::string format_number(double v);

}  // namespace simulate
