#pragma once

// Fixed-rate run log. CSV with a '#'-prefixed header block:
//
//   # hse-telemetry schema=1
//   # config_hash=<16 hex digits>
//   # param.<key>=<value>        (one per config key, echoing the run)
//   t,s,delta_hw,...            (column names, stable per schema)
//   <rows>
//   # FAULT <message>           (only when the run aborted)
//
// Numbers use the shortest round-trip decimal form, so equal runs are
// byte-identical and parsing restores every value exactly.

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hse {

inline constexpr int kTelemetrySchemaVersion = 1;

struct TelemetryRecord {
  double t = 0.0;
  double s = 0.0;  // distance along the course (reference north position)
  // Driver.
  double delta_hw = 0.0;
  double delta_hw_rate = 0.0;
  double throttle = 0.0;
  double brake = 0.0;
  // Reference vehicle.
  double ref_r = 0.0;
  double ref_uy = 0.0;
  double ref_ux = 0.0;
  double ref_ux_dot = 0.0;
  double ref_ay = 0.0;
  double ref_ay_seat = 0.0;
  double ref_psi = 0.0;
  double ref_E = 0.0;
  double ref_N = 0.0;
  double ref_Mz = 0.0;
  double ref_Fy = 0.0;
  double ref_alpha_f = 0.0;
  double target_offset = 0.0;
  // Plant (measured).
  double r = 0.0;
  double uy = 0.0;
  double ux = 0.0;
  double ay = 0.0;
  double ay_seat = 0.0;
  double rdot = 0.0;
  double psi = 0.0;
  double E = 0.0;
  double N = 0.0;
  // Controller.
  double delta_f = 0.0;
  double delta_r = 0.0;
  double delta_f_act = 0.0;
  double delta_r_act = 0.0;
  double saturated = 0.0;  // 0 or 1
  double e_r = 0.0;
  double e_uy = 0.0;
  double uy_des = 0.0;
  // Haptics.
  double tau_hw = 0.0;
};

struct TelemetryColumn {
  const char* name;
  double TelemetryRecord::*field;
};

/// Column order of the CSV body.
[[nodiscard]] const std::vector<TelemetryColumn>& telemetry_columns();

/// Member pointer for a column name, nullopt when unknown.
[[nodiscard]] std::optional<double TelemetryRecord::*> telemetry_field(std::string_view name);

/// Shortest decimal string that parses back to exactly `v`.
[[nodiscard]] std::string format_number(double v);

struct TelemetryHeader {
  int schema = kTelemetrySchemaVersion;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> params;
};

class TelemetryWriter {
 public:
  TelemetryWriter(std::ostream& out, const TelemetryHeader& header);
  void write(const TelemetryRecord& rec);
  void fault(std::string_view message);
  void flush();

 private:
  std::ostream& out_;
};

struct TelemetryLog {
  TelemetryHeader header;
  std::vector<TelemetryRecord> records;
  std::optional<std::string> fault;
};

/// Parses a telemetry stream; throws ConfigError on unknown schema
/// versions, missing columns or malformed rows.
[[nodiscard]] TelemetryLog read_telemetry(std::istream& in);
[[nodiscard]] TelemetryLog read_telemetry_file(const std::string& path);

/// Serialises records in the file format (used for determinism checks).
[[nodiscard]] std::string to_csv(const TelemetryHeader& header, const std::vector<TelemetryRecord>& records,
                                 const std::optional<std::string>& fault = std::nullopt);

}  // namespace hse
