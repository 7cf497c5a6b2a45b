#pragma once

// The simulated high-speed vehicle: speed scaling, double-track lateral
// dynamics driven by the driver's hand wheel and pedals, and the virtual pose.

#include <vector>

#include "hse/chassis.hpp"
#include "hse/vehicle.hpp"

namespace hse {

/// Linear pedal-to-tire-force map, split per axle and then equally left/right.
struct PedalMap {
  double F_throttle_max = 4000.0;  // N, total at full throttle
  double F_brake_max = 8000.0;     // N, total at full brake
  double drive_front = 0.0;        // fraction of drive force on the front axle
  double drive_rear = 1.0;
  double brake_front = 0.6;
  double brake_rear = 0.4;
};

[[nodiscard]] std::vector<Violation> validate(const PedalMap& map);

/// Reference speed seen by the driver: f times the measured speed.
[[nodiscard]] double scale_speed(double ux, double f);

/// Per-wheel longitudinal force demands (FL, FR, RL, RR), N.
[[nodiscard]] WheelQuad<double> pedals_to_wheel_forces(const DriverInputs& in, const PedalMap& map);

inline constexpr double kLateralSpeedFloor = 0.5;  // m/s

struct ReferenceState {
  // Integrated states.
  double r = 0.0;    // rad/s
  double uy = 0.0;   // m/s
  double psi = 0.0;  // rad from north
  double E = 0.0;    // m
  double N = 0.0;    // m

  // Outputs of the last step, evaluated at the updated state.
  double ux = 0.0;      // scaled speed used by the step, m/s
  double ux_dot = 0.0;  // scaled longitudinal acceleration implied by the speed input
  double Mz = 0.0;
  double Fy = 0.0;
  double ay = 0.0;
  double uy_dot = 0.0;
  double rdot = 0.0;
  double alpha_f = 0.0;  // single-track front slip angle
  double delta_f = 0.0;  // front road-wheel angle (both wheels)
  WheelQuad<double> wheel_Fx = WheelQuad<double>::Zero();
  WheelQuad<double> wheel_Fy = WheelQuad<double>::Zero();
};

/// Measured (unscaled) speed over one step. `end` lets a caller that knows
/// the speed trajectory supply it; the causal loop uses begin == end.
struct SpeedSpan {
  double begin = 0.0;
  double end = 0.0;
};

/// One RK4 step of the reference vehicle. Throws IntegrationFault on non-finite state.
[[nodiscard]] ReferenceState reference_step(const ReferenceState& state, const DriverInputs& in, SpeedSpan ux_measured,
                                            double f, double dt, const VehicleParams& p, const PedalMap& pedals);

[[nodiscard]] inline ReferenceState reference_step(const ReferenceState& state, const DriverInputs& in,
                                                   double ux_measured, double f, double dt, const VehicleParams& p,
                                                   const PedalMap& pedals) {
  return reference_step(state, in, SpeedSpan{ux_measured, ux_measured}, f, dt, p, pedals);
}

/// Front road-wheel angle relayed from the hand wheel, clamped to the rack travel.
[[nodiscard]] double reference_front_angle(double delta_hw, const VehicleParams& p);

}  // namespace hse
