#pragma once

// Maneuver courses and the scripted preview driver that stands in for the
// human. Courses run due north from the origin; lateral offsets are positive
// to the left (west), so a vehicle's lateral position is -E.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hse/units.hpp"
#include "hse/vehicle.hpp"

namespace hse {

enum class ManeuverKind { kDlc, kWeave, kStraight };

[[nodiscard]] ManeuverKind parse_maneuver_kind(std::string_view text);
[[nodiscard]] std::string to_string(ManeuverKind kind);

inline constexpr double kDlcCourseLength = 61.0;  // m

struct Maneuver {
  ManeuverKind kind = ManeuverKind::kStraight;
  double ux_target = 0.0;  // reference speed, m/s
  double f = 1.0;
  double lane_offset = 3.5;  // m, left positive
  double approach = 20.0;    // straight run-up before the course, m
  double runout = 40.0;      // straight after the course, m
  // Double lane change sections: entry lane, change, hold, change back, exit lane.
  std::array<double, 5> dlc_sections{5.0, 22.0, 7.0, 22.0, 5.0};
  double weave_wavelength = 75.0;  // m per left-right cycle
  int weave_cycles = 5;
  double straight_length = 200.0;  // course length of the straight kind, m

  [[nodiscard]] double course_length() const;
  [[nodiscard]] double total_length() const { return approach + course_length() + runout; }
  /// Target lateral offset at distance s along the course (s = north position).
  [[nodiscard]] double target_offset(double s) const;
  /// Stations (s) where the target holds a lane and the vehicle should be on it.
  [[nodiscard]] std::vector<double> gate_stations() const;
};

struct ManeuverOverrides {
  std::optional<double> ux_target;
  std::optional<double> f;
  std::optional<double> lane_offset;
  std::optional<double> approach;
  std::optional<double> runout;
  std::optional<std::array<double, 5>> dlc_sections;
  std::optional<double> weave_wavelength;
  std::optional<int> weave_cycles;
  std::optional<double> straight_length;
};

/// Course of the given kind with defaults, then overrides applied and checked.
[[nodiscard]] Maneuver build_maneuver(ManeuverKind kind, const ManeuverOverrides& overrides = {});

struct DriverModel {
  double preview_time = 0.9;                     // s
  double steer_gain = 0.6;                       // rad of hand wheel per m of previewed error
  double hw_max = units::deg2rad(540.0);         // rad
  double hw_rate_limit = units::deg2rad(720.0);  // rad/s
  double hw_bandwidth = 3.0;                     // Hz, arm/hand-wheel second-order response
  double hw_damping = 0.8;
  double speed_kp = 0.5;  // pedal per m/s of reference-speed error
  double speed_ki = 0.2;  // pedal per m of integrated error
};

[[nodiscard]] std::vector<Violation> validate(const DriverModel& model);

struct VirtualPose {
  double psi = 0.0;
  double E = 0.0;
  double N = 0.0;
};

struct DriverState {
  double hw_angle = 0.0;
  double hw_rate = 0.0;
  double hw_accel = 0.0;
  double speed_integral = 0.0;
};

/// Previewed lateral error: target offset ahead minus the straight-line
/// projection of the vehicle along its heading.
[[nodiscard]] double previewed_error(const VirtualPose& pose, double ux_ref, const Maneuver& m,
                                     const DriverModel& model);

/// Hand-wheel demand before the arm dynamics and rate limit.
[[nodiscard]] double steering_demand(const VirtualPose& pose, double ux_ref, const Maneuver& m,
                                     const DriverModel& model);

/// One driver tick. Updates `state` and returns the inputs for this tick.
[[nodiscard]] DriverInputs driver_step(DriverState& state, const VirtualPose& pose, double ux_ref, const Maneuver& m,
                                       const DriverModel& model, double dt);

}  // namespace hse
