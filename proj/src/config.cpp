#include "bso/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace bso {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class KeyMap {
 public:
  KeyMap(std::map<std::string, std::string> kv, std::string source)
      : kv_(std::move(kv)), source_(std::move(source)) {}

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  std::string take_string(const std::string& key) {
    const auto it = kv_.find(key);
    if (it == kv_.end())
      throw ConfigError(source_ + ": missing required key '" + key + "'");
    const std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  double take_double(const std::string& key, std::optional<double> def = {}) {
    if (!has(key)) {
      if (def) return *def;
      throw ConfigError(source_ + ": missing required key '" + key + "'");
    }
    const std::string v = take_string(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
      throw ConfigError(source_ + ": key '" + key + "': invalid number '" + v +
                        "'");
    return x;
  }

  int take_int(const std::string& key, std::optional<int> def = {}) {
    if (!has(key) && def) return *def;
    const double x = take_double(key);
    const int i = (int)x;
    if ((double)i != x)
      throw ConfigError(source_ + ": key '" + key + "': expected an integer");
    return i;
  }

  bool take_bool(const std::string& key, std::optional<bool> def = {}) {
    if (!has(key)) {
      if (def) return *def;
      throw ConfigError(source_ + ": missing required key '" + key + "'");
    }
    const std::string v = take_string(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(source_ + ": key '" + key + "': expected true/false, got '" +
                      v + "'");
  }

  void expect_consumed() const {
    if (kv_.empty()) return;
    std::string keys;
    for (const auto& [k, v] : kv_) keys += (keys.empty() ? "" : ", ") + k;
    throw ConfigError(source_ + ": unknown key(s): " + keys);
  }

  const std::string& source() const { return source_; }

 private:
  std::map<std::string, std::string> kv_;
  std::string source_;
};

KeyMap tokenize(const std::string& text, const std::string& source) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    if (kv.count(key))
      throw ConfigError(source + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  return KeyMap(std::move(kv), source);
}

bool mode_needs_beam(RunMode m) {
  return m == RunMode::Beam || m == RunMode::LockIn;
}

}  // namespace

const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::Trajectory: return "trajectory";
    case RunMode::Bso: return "bso";
    case RunMode::PhiSweep: return "phi_sweep";
    case RunMode::Beam: return "beam";
    case RunMode::LockIn: return "lockin";
    case RunMode::OracleCompare: return "oracle_compare";
  }
  return "?";
}

RunMode parse_mode(const std::string& name) {
  if (name == "trajectory") return RunMode::Trajectory;
  if (name == "bso") return RunMode::Bso;
  if (name == "phi_sweep") return RunMode::PhiSweep;
  if (name == "beam") return RunMode::Beam;
  if (name == "lockin") return RunMode::LockIn;
  if (name == "oracle_compare") return RunMode::OracleCompare;
  throw ConfigError("key 'mode': unknown mode '" + name +
                    "' (expected trajectory, bso, phi_sweep, beam, lockin or "
                    "oracle_compare)");
}

RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name) {
  KeyMap keys = tokenize(text, source_name);

  const RunMode mode = parse_mode(keys.take_string("mode"));

  const double g0M = keys.take_double("field.g0M");
  const double omega = keys.take_double("field.omega");
  const double phi = keys.take_double("field.phi", 0.0);
  const double tau_sw = keys.take_double("field.tau_sw");
  const bool comp = keys.take_bool("field.compensate_bs", true);

  std::optional<BeamConfig> beam;
  if (keys.has("beam.u") || mode_needs_beam(mode)) {
    BeamConfig b;
    b.u = keys.take_double("beam.u");
    b.z0 = keys.take_double("beam.z0", 0.0);
    b.z_sw = keys.take_double("beam.z_sw");
    b.quad_order = keys.take_int("beam.quad_order", 16);
    b.v_cutoff = keys.take_double("beam.cutoff", 4.5);
    beam = b;
  }

  NumericsConfig num;
  num.dt = keys.take_double("numerics.dt", 0.0);
  num.stride = keys.take_int("numerics.stride", 10);
  num.t_end = keys.take_double("numerics.t_end", 0.0);
  num.phi_points = keys.take_int("numerics.phi_points", 32);
  num.theta_points = keys.take_int("numerics.theta_points", 16);
  num.lockin_periods = keys.take_double("numerics.lockin_periods", 64.0);
  num.min_saturation = keys.take_double("numerics.min_saturation", 0.85);
  num.beam_periods = keys.take_int("numerics.beam_periods", 4);
  num.samples_per_period = keys.take_int("numerics.samples_per_period", 64);
  if (num.stride < 1)
    throw ConfigError(source_name + ": key 'numerics.stride': must be >= 1");
  if (num.phi_points < 8)
    throw ConfigError(source_name + ": key 'numerics.phi_points': must be >= 8");
  if (num.theta_points < 2)
    throw ConfigError(source_name + ": key 'numerics.theta_points': must be >= 2");

  OutputConfig out;
  out.dir = keys.has("output.dir") ? keys.take_string("output.dir") : "out";
  out.csv = keys.take_bool("output.csv", true);
  out.svg = keys.take_bool("output.svg", true);

  keys.expect_consumed();

  try {
    FieldParams field(g0M, omega, phi, tau_sw, comp);
    return RunConfig{mode, field, beam, num, out};
  } catch (const DomainError& e) {
    throw ConfigError(source_name + ": field.*: " + e.what());
  }
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void apply_mode_override(RunConfig& cfg, const std::string& mode) {
  cfg.mode = parse_mode(mode);
  if (mode_needs_beam(cfg.mode) && !cfg.beam)
    throw ConfigError("mode override '" + mode +
                      "': config has no beam.* section");
}

}  // namespace bso
