#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fredsim/error.hpp"

namespace simulate {

using fredsim::ErrorKind;
using fredsim::raise;

namespace {

struct OptionSpec {
  std::string key;
  std::string fallback;
};

using OptionTable = std::vector<OptionSpec>;

const OptionTable kCatOptions = {
    {"t_s", "auto"}, {"hamiltonian", "dis"}, {"reference", "app"}, {"dt", "auto"}, {"step_halving", "true"}};

OptionTable with_cat(OptionTable extra) {
  OptionTable t = kCatOptions;
  t.insert(t.end(), extra.begin(), extra.end());
  return t;
}

const std::map<std::string, OptionTable>& option_tables() {
  static const std::map<std::string, OptionTable> tables = {
      {"fidelity-closed",
       {{"m", "1"},
        {"beta0_re", "0.8"},
        {"beta0_im", "0"},
        {"eta0_re", "0.8"},
        {"eta0_im", "0"},
        {"t_final", "auto"},
        {"n_times", "201"},
        {"delta_c_values", ""},
        {"numeric", "false"},
        {"dt", "auto"}}},
      {"fidelity-open",
       {{"m", "1"},
        {"beta0_re", "0.2"},
        {"beta0_im", "0"},
        {"eta0_re", "0.2"},
        {"eta0_im", "0"},
        {"t_final", "auto"},
        {"n_times", "101"},
        {"dt", "auto"},
        {"step_halving", "true"}}},
      {"coupling-ratios", {}},
      {"fc-factors", {{"m_max", "3"}}},
      {"cat", kCatOptions},
      {"wigner",
       with_cat({{"branch", "plus"},
                 {"re_min", "-2"},
                 {"re_max", "5"},
                 {"im_min", "-3"},
                 {"im_max", "3"},
                 {"n_re", "141"},
                 {"n_im", "121"},
                 {"analytic", "true"}})},
      {"quadrature",
       with_cat({{"branch", "plus"}, {"theta", "auto"}, {"x_min", "-6"}, {"x_max", "6"}, {"n_x", "1200"}})},
      {"pointer",
       {{"vartheta_min", "0.05"},
        {"vartheta_max", "3.0915926535897933"},
        {"n_vartheta", "200"},
        {"omega_a_lock", "0"},
        {"t_s", "auto"}}},
      {"blockade", {{"numeric", "true"}, {"padding", "30"}}},
      {"displacement", {{"xi0_re", "0"}, {"xi0_im", "0"}, {"t_final", "auto"}, {"n_times", "201"}}},
  };
  return tables;
}

[[noreturn]] void config_error(const std::string& msg) { raise(ErrorKind::config, msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

RawConfig from_ptree(const boost::property_tree::ptree& tree) {
  RawConfig raw;
  for (const auto& [section, body] : tree) {
    if (body.empty()) config_error("key '" + section + "' outside a section");
    auto& keys = raw[section];
    for (const auto& [key, value] : body) {
      if (!value.empty()) config_error("nested key under [" + section + "] " + key);
      keys[key] = trim(value.data());
    }
  }
  return raw;
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  config_error(where + ": expected true/false, got '" + text + "'");
}

int parse_int(const std::string& text, const std::string& where) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) config_error(where + ": expected an integer, got '" + text + "'");
  return v;
}

const std::vector<std::string> kParamKeys = {
    "omega_a",  "delta_b",  "delta_c", "g",       "omega_drive_amp_c_re", "omega_drive_amp_c_im",
    "theta_c",  "xi_ss_mag", "kappa_a", "kappa_b", "kappa_c",              "nbar_a",
    "nbar_b",   "nbar_c",   "delta_a", "omega_drive_amp_a_re", "omega_drive_amp_a_im"};

void check_keys(const std::map<std::string, std::string>& keys, const std::string& section,
                const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : keys) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      config_error("unknown key '" + key + "' in [" + section + "]");
    }
    if (value.empty() && section != "sweep") config_error("empty value for '" + key + "' in [" + section + "]");
  }
}

}  // namespace

double parse_number(const std::string& text, const std::string& where) {
  double v = 0.0;
  const std::string t = trim(text);
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    config_error(where + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& where) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, where));
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

RawConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    config_error(std::string("config syntax: ") + e.what());
  }
  return from_ptree(tree);
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

double Options::number(const std::string& key) const { return parse_number(text(key), key); }
int Options::integer(const std::string& key) const { return parse_int(text(key), key); }
bool Options::flag(const std::string& key) const { return parse_bool(text(key), key); }
std::vector<double> Options::list(const std::string& key) const { return parse_list(text(key), key); }

const std::string& Options::text(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) config_error("option '" + key + "' is not defined for this experiment");
  return it->second;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, table] : option_tables()) n.push_back(name);
    return n;
  }();
  return names;
}

const std::vector<std::string>& param_keys() { return kParamKeys; }

ExperimentConfig resolve(const RawConfig& raw) {
  ExperimentConfig cfg;
  cfg.raw = raw;
  auto exp_it = raw.find("experiment");
  if (exp_it == raw.end()) config_error("missing [experiment] section");
  check_keys(exp_it->second, "experiment", {"name", "output"});
  auto name_it = exp_it->second.find("name");
  if (name_it == exp_it->second.end()) config_error("missing 'name' in [experiment]");
  cfg.experiment = name_it->second;
  const auto& tables = option_tables();
  auto table_it = tables.find(cfg.experiment);
  if (table_it == tables.end()) config_error("unknown experiment '" + cfg.experiment + "'");
  if (auto o = exp_it->second.find("output"); o != exp_it->second.end()) cfg.output = o->second;

  std::set<std::string> allowed_sections = {"experiment", "params", "hilbert", "sweep", cfg.experiment};
  for (const auto& [section, keys] : raw) {
    if (!allowed_sections.count(section)) config_error("unknown section [" + section + "]");
  }

  // [params]
  static const std::map<std::string, std::string> empty;
  const auto& params = raw.count("params") ? raw.at("params") : empty;
  check_keys(params, "params", kParamKeys);
  auto num = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : parse_number(it->second, "params." + key);
  };
  fredsim::SystemParams& p = cfg.params;
  p.omega_a = num("omega_a", p.omega_a);
  p.delta_b = num("delta_b", p.delta_b);
  p.delta_c = num("delta_c", p.delta_c);
  p.g = num("g", p.g);
  p.kappa_a = num("kappa_a", p.kappa_a);
  p.kappa_b = num("kappa_b", p.kappa_b);
  p.kappa_c = num("kappa_c", p.kappa_c);
  p.nbar_a = num("nbar_a", p.nbar_a);
  p.nbar_b = num("nbar_b", p.nbar_b);
  p.nbar_c = num("nbar_c", p.nbar_c);
  p.delta_a = num("delta_a", p.delta_a);
  p.omega_drive_amp_a = fredsim::cplx(num("omega_drive_amp_a_re", 0.0), num("omega_drive_amp_a_im", 0.0));
  if (p.g < 0.0) config_error("params.g must be >= 0");
  if (p.delta_b == 0.0) config_error("params.delta_b must be nonzero (it sets the frequency unit)");
  for (double v : {p.kappa_a, p.kappa_b, p.kappa_c, p.nbar_a, p.nbar_b, p.nbar_c}) {
    if (v < 0.0) config_error("decay rates and thermal occupations must be >= 0");
  }
  const bool has_drive = params.count("omega_drive_amp_c_re") || params.count("omega_drive_amp_c_im");
  const bool has_xi = params.count("xi_ss_mag") || params.count("theta_c");
  if (has_drive && has_xi) {
    config_error("set either omega_drive_amp_c_* or xi_ss_mag/theta_c, not both");
  }
  if (has_drive) {
    p.omega_drive_amp_c = fredsim::cplx(num("omega_drive_amp_c_re", 0.0), num("omega_drive_amp_c_im", 0.0));
    p.resolve_xi_from_drive();
  } else {
    p.xi_ss_mag = num("xi_ss_mag", 0.0);
    p.theta_c = num("theta_c", 0.0);
    if (p.xi_ss_mag < 0.0) config_error("params.xi_ss_mag must be >= 0");
    p.resolve_drive_from_xi();
  }

  // [hilbert]
  const auto& hilbert = raw.count("hilbert") ? raw.at("hilbert") : empty;
  check_keys(hilbert, "hilbert", {"dim_a", "dim_b", "dim_c", "cap"});
  auto dim = [&](const std::string& key, int fallback) {
    auto it = hilbert.find(key);
    return it == hilbert.end() ? fallback : parse_int(it->second, "hilbert." + key);
  };
  cfg.hilbert.dim_a = dim("dim_a", cfg.hilbert.dim_a);
  cfg.hilbert.dim_b = dim("dim_b", cfg.hilbert.dim_b);
  cfg.hilbert.dim_c = dim("dim_c", cfg.hilbert.dim_c);
  if (auto it = hilbert.find("cap"); it != hilbert.end()) {
    const int cap = parse_int(it->second, "hilbert.cap");
    if (cap <= 0) config_error("hilbert.cap must be > 0");
    cfg.dimension_cap = static_cast<std::size_t>(cap);
  }
  try {
    cfg.hilbert.validate(cfg.dimension_cap);
  } catch (const fredsim::Error& e) {
    if (e.kind() == ErrorKind::dimension_cap) throw;
    config_error(e.what());
  }

  // [sweep]
  if (auto it = raw.find("sweep"); it != raw.end()) {
    const auto& s = it->second;
    check_keys(s, "sweep", {"axis", "values", "start", "stop", "count", "scale"});
    SweepSpec sw;
    if (!s.count("axis")) config_error("[sweep] needs 'axis'");
    sw.axis = s.at("axis");
    if (std::find(kParamKeys.begin(), kParamKeys.end(), sw.axis) == kParamKeys.end()) {
      config_error("sweep axis '" + sw.axis + "' is not a numeric [params] field");
    }
    if (s.count("values")) {
      if (s.count("start") || s.count("stop") || s.count("count") || s.count("scale")) {
        config_error("[sweep] takes either 'values' or start/stop/count/scale");
      }
      sw.values = parse_list(s.at("values"), "sweep.values");
    } else {
      if (!s.count("start") || !s.count("stop") || !s.count("count")) {
        config_error("[sweep] needs 'values' or start, stop and count");
      }
      const double a = parse_number(s.at("start"), "sweep.start");
      const double b = parse_number(s.at("stop"), "sweep.stop");
      const int n = parse_int(s.at("count"), "sweep.count");
      const std::string scale = s.count("scale") ? s.at("scale") : "linear";
      if (n < 1) config_error("sweep.count must be >= 1");
      if (scale != "linear" && scale != "log") config_error("sweep.scale must be linear or log");
      if (scale == "log" && (a <= 0.0 || b <= 0.0)) config_error("log sweep needs positive bounds");
      for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        sw.values.push_back(scale == "linear" ? a + f * (b - a)
                                              : std::exp(std::log(a) + f * (std::log(b) - std::log(a))));
      }
    }
    if (sw.values.empty()) config_error("sweep has no values");
    cfg.sweep = sw;
  }

  // experiment options
  const auto& given = raw.count(cfg.experiment) ? raw.at(cfg.experiment) : empty;
  std::vector<std::string> allowed;
  std::map<std::string, std::string> values;
  for (const OptionSpec& o : table_it->second) {
    allowed.push_back(o.key);
    values[o.key] = o.fallback;
  }
  for (const auto& [key, value] : given) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      config_error("unknown key '" + key + "' in [" + cfg.experiment + "]");
    }
    values[key] = value;
  }
  cfg.options = Options(std::move(values));
  return cfg;
}

ExperimentConfig with_param(const ExperimentConfig& cfg, const std::string& key, double value) {
  if (std::find(kParamKeys.begin(), kParamKeys.end(), key) == kParamKeys.end()) {
    config_error("sweep axis '" + key + "' is not a numeric [params] field");
  }
  RawConfig raw = cfg.raw;
  raw["params"][key] = format_number(value);
  raw.erase("sweep");
  ExperimentConfig out = resolve(raw);
  out.sweep.reset();
  return out;
}

json resolved_json(const ExperimentConfig& cfg) {
  const fredsim::SystemParams& p = cfg.params;
  json j;
  j["experiment"] = cfg.experiment;
  j["params"] = {{"omega_a", p.omega_a},
                 {"delta_b", p.delta_b},
                 {"delta_c", p.delta_c},
                 {"g", p.g},
                 {"omega_drive_amp_c_re", p.omega_drive_amp_c.real()},
                 {"omega_drive_amp_c_im", p.omega_drive_amp_c.imag()},
                 {"theta_c", p.theta_c},
                 {"xi_ss_mag", p.xi_ss_mag},
                 {"g0", p.g0()},
                 {"kappa_a", p.kappa_a},
                 {"kappa_b", p.kappa_b},
                 {"kappa_c", p.kappa_c},
                 {"nbar_a", p.nbar_a},
                 {"nbar_b", p.nbar_b},
                 {"nbar_c", p.nbar_c},
                 {"delta_a", p.delta_a},
                 {"omega_drive_amp_a_re", p.omega_drive_amp_a.real()},
                 {"omega_drive_amp_a_im", p.omega_drive_amp_a.imag()}};
  j["hilbert"] = {{"dim_a", cfg.hilbert.dim_a},
                  {"dim_b", cfg.hilbert.dim_b},
                  {"dim_c", cfg.hilbert.dim_c},
                  {"cap", cfg.dimension_cap}};
  json opts = json::object();
  for (const auto& [k, v] : cfg.options.values()) opts[k] = v;
  j[cfg.experiment] = opts;
  if (cfg.sweep) j["sweep"] = {{"axis", cfg.sweep->axis}, {"values", cfg.sweep->values}};
  return j;
}

RawConfig config_from_json(const json& j) {
  RawConfig raw;
  auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : format_number(v.get<double>()); };
  if (!j.contains("experiment")) config_error("metadata config lacks 'experiment'");
  const std::string name = j.at("experiment").get<std::string>();
  raw["experiment"]["name"] = name;
  // the drive is derived from xi_ss on resolve, g0 is derived as well
  for (const auto& [key, value] : j.at("params").items()) {
    if (key == "g0" || key == "omega_drive_amp_c_re" || key == "omega_drive_amp_c_im") continue;
    raw["params"][key] = text(value);
  }
  for (const auto& [key, value] : j.at("hilbert").items()) raw["hilbert"][key] = std::to_string(value.get<long long>());
  if (j.contains(name)) {
    for (const auto& [key, value] : j.at(name).items()) raw[name][key] = text(value);
  }
  if (j.contains("sweep")) {
    raw["sweep"]["axis"] = j.at("sweep").at("axis").get<std::string>();
    std::string values;
    for (const auto& v : j.at("sweep").at("values")) values += (values.empty() ? "" : ",") + text(v);
    raw["sweep"]["values"] = values;
  }
  return raw;
}

}  // namespace simulate
