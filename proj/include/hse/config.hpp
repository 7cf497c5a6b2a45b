#pragma once

// Scenario configuration. Files are YAML; nested maps flatten to dotted keys
// and every physical key carries its unit in the name (vehicle.m_kg,
// gains.K_rsat_Nms, maneuver.ux_target_mph). Angles in files are degrees,
// internal values are SI.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hse/controller.hpp"
#include "hse/evaluation.hpp"
#include "hse/haptics.hpp"
#include "hse/plant.hpp"
#include "hse/reference_model.hpp"
#include "hse/scenario.hpp"
#include "hse/vehicle.hpp"

namespace hse {

enum class Mode { kEmulated, kManual };

struct RunSettings {
  double dt = 0.001;        // s
  double duration = 0.0;    // s; 0 runs until the course is complete
  double max_duration = 300.0;
  std::uint64_t seed = 1;
  std::string out = "telemetry.csv";
  bool allow_unstable = false;  // run even when the error dynamics fail the eigencheck
};

struct ScenarioConfig {
  VehicleParams vehicle = default_params();
  ErrorMatrixElements elements = default_matrix_elements();
  double K_rsat = kDefaultKrsat;
  bool integral_enabled = true;
  double command_rate_limit = units::deg2rad(500.0);  // controller slew, rad/s
  HapticParams haptics;
  PedalMap pedals;
  Maneuver maneuver = build_maneuver(ManeuverKind::kDlc);
  DriverModel driver;
  PlantConfig plant;
  Mode mode = Mode::kEmulated;
  ThresholdTable thresholds = ThresholdTable::seeded();
  RunSettings run;

  /// Effective scale factor (manual mode pins it to 1).
  [[nodiscard]] double f() const { return mode == Mode::kManual ? 1.0 : maneuver.f; }
  /// Gains as used by the controller, integral terms removed when disabled.
  [[nodiscard]] GainSet gains() const;
};

struct ConfigKey {
  std::string name;
  std::string unit;
  std::string help;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

/// Every recognised key in echo order. `maneuver.kind` comes first because
/// it selects the defaults the other maneuver keys override.
[[nodiscard]] const std::vector<ConfigKey>& config_keys();

/// Applies flattened key/value pairs on top of the defaults of the chosen
/// maneuver kind. Throws ConfigError on unknown keys, unparsable values or
/// invariant violations.
[[nodiscard]] ScenarioConfig parse_config(const std::vector<std::pair<std::string, std::string>>& entries);
[[nodiscard]] ScenarioConfig load_config_text(const std::string& yaml);
[[nodiscard]] ScenarioConfig load_config_file(const std::string& path);

/// Applies one override (CLI flags) and revalidates.
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// Throws ConfigError listing every violated invariant.
void validate(const ScenarioConfig& cfg);

/// Canonical key/value echo of the effective configuration.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> echo_config(const ScenarioConfig& cfg);

/// FNV-1a 64 over the canonical echo, as 16 hex digits.
[[nodiscard]] std::string config_hash(const ScenarioConfig& cfg);

/// Key reference for --help: name, unit, description, default.
[[nodiscard]] std::string describe_keys();

[[nodiscard]] std::string to_string(Mode mode);

}  // namespace hse
