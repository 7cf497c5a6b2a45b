#pragma once

// Stand-in for the physical test vehicle: the same double-track brush-tire
// physics as the reference model, at the real speed, with both axles
// steered through lagged, rate-limited actuators.

#include <limits>
#include <random>

#include "hse/chassis.hpp"
#include "hse/units.hpp"
#include "hse/vehicle.hpp"

namespace hse {

/// First-order lag plus slew limit. tau == 0 passes the command straight
/// through; an infinite rate disables the slew limit.
struct ActuatorModel {
  double tau = 0.02;                        // s
  double rate = units::deg2rad(500.0);      // rad/s at the road wheel

  static ActuatorModel ideal() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

/// Zero-mean Gaussian measurement noise standard deviations (SI).
struct NoiseConfig {
  double ux = 0.0;
  double uy = 0.0;
  double r = 0.0;
  double ay = 0.0;
  double rdot = 0.0;

  bool enabled() const { return ux > 0 || uy > 0 || r > 0 || ay > 0 || rdot > 0; }
};

struct PlantConfig {
  ActuatorModel actuator;
  double rear_bias = 0.0;  // rear steering misalignment added after the actuator, rad
  NoiseConfig noise;
};

struct PlantState {
  double ux = 0.0;
  double uy = 0.0;
  double r = 0.0;
  double psi = 0.0;
  double E = 0.0;
  double N = 0.0;
  double delta_f_act = 0.0;
  double delta_r_act = 0.0;

  // Outputs of the last step at the updated state.
  double ay = 0.0;
  double rdot = 0.0;
  double Mz = 0.0;
  double Fy = 0.0;
  double alpha_f = 0.0;  // single-track front slip angle
  WheelQuad<double> wheel_Fx = WheelQuad<double>::Zero();
  WheelQuad<double> wheel_Fy = WheelQuad<double>::Zero();
};

/// Actuator position after one step toward `cmd`.
[[nodiscard]] double actuate(double position, double cmd, double dt, const ActuatorModel& model);

/// One RK4 step. `pedal_forces` are per-wheel longitudinal force demands.
[[nodiscard]] PlantState plant_step(const PlantState& state, double delta_f_cmd, double delta_r_cmd,
                                    const WheelQuad<double>& pedal_forces, double dt, const VehicleParams& p,
                                    const PlantConfig& cfg);

/// Exact state copy when noise is disabled; otherwise draws from `rng`.
[[nodiscard]] Measurements measure(const PlantState& state, const NoiseConfig& noise, std::mt19937_64& rng);
[[nodiscard]] Measurements measure(const PlantState& state);

}  // namespace hse
