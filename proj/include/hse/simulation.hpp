#pragma once

// Fixed-rate closed loop: driver, reference vehicle, tracking controller
// (or manual pass-through), plant, steering feel, log.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hse/config.hpp"
#include "hse/evaluation.hpp"
#include "hse/telemetry.hpp"

namespace hse {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitIntegrationFault = 3,
  kExitNonConvergence = 4,
  kExitUnstable = 5,
};

class Simulation {
 public:
  /// Throws ConfigError when the configuration is invalid, or when the
  /// error dynamics are not stable and run.allow_unstable is off.
  explicit Simulation(ScenarioConfig cfg);

  /// Advances one tick and returns its log row.
  TelemetryRecord step();

  /// True once the course is complete or the duration has elapsed.
  [[nodiscard]] bool done() const;

  [[nodiscard]] double time() const { return static_cast<double>(tick_) * cfg_.run.dt; }
  [[nodiscard]] const ScenarioConfig& config() const { return cfg_; }
  [[nodiscard]] const ReferenceState& reference() const { return ref_; }
  [[nodiscard]] const PlantState& plant() const { return plant_; }
  [[nodiscard]] const ControllerState& controller() const { return ctrl_; }
  [[nodiscard]] const GainSet& gains() const { return gains_; }

 private:
  ScenarioConfig cfg_;
  GainSet gains_;
  std::mt19937_64 rng_;
  std::uint64_t tick_ = 0;
  DriverState driver_;
  ReferenceState ref_;
  PlantState plant_;
  ControllerState ctrl_;
  Measurements meas_;
};

struct RunResult {
  std::vector<TelemetryRecord> records;
  std::optional<std::string> fault;
  int exit_code = kExitOk;
  std::optional<TrackingReport> report;
};

/// Runs the scenario in memory.
[[nodiscard]] RunResult simulate(const ScenarioConfig& cfg);

/// Telemetry header for a configuration (schema, hash, parameter echo).
[[nodiscard]] TelemetryHeader telemetry_header(const ScenarioConfig& cfg);

/// Runs the scenario, streaming telemetry to `telemetry` (partial rows plus
/// a FAULT trailer when the run aborts) and the report to `report`.
/// Returns the exit code.
int run_scenario(const ScenarioConfig& cfg, std::ostream& telemetry, std::ostream& report);

/// Output path for the telemetry file: run.out, placed under
/// $HSE_OUTPUT_DIR when that is set and run.out is relative.
[[nodiscard]] std::string resolve_output_path(const ScenarioConfig& cfg);

}  // namespace hse
