#pragma once

#include <optional>
#include <string>

#include "bso/field.hpp"

namespace bso {

enum class RunMode { Trajectory, Bso, PhiSweep, Beam, LockIn, OracleCompare };

const char* mode_name(RunMode m);
RunMode parse_mode(const std::string& name);

struct BeamConfig {
  double u = 1.0;
  double z0 = 0.0;
  double z_sw = 50.0;
  int quad_order = 16;
  double v_cutoff = 4.5;
};

struct NumericsConfig {
  double dt = 0.0;     // 0 -> min(1/omega, 1/g0M)/500
  int stride = 10;
  double t_end = 0.0;  // 0 -> mode-dependent default
  int phi_points = 32;
  int theta_points = 16;
  double lockin_periods = 64.0;
  double min_saturation = 0.85;
  int beam_periods = 4;
  int samples_per_period = 64;
};

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  bool svg = true;
};

struct RunConfig {
  RunMode mode;
  FieldParams field;
  std::optional<BeamConfig> beam;
  NumericsConfig numerics;
  OutputConfig output;
};

// Flat "key = value" text with dotted section keys; '#' starts a comment.
// Unknown, duplicate, missing-required or malformed keys raise ConfigError
// with the offending key path in the message.
RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name = "<config>");
RunConfig parse_config(const std::string& path);

// CLI --mode override; revalidates mode-required sections.
void apply_mode_override(RunConfig& cfg, const std::string& mode);

}  // namespace bso
