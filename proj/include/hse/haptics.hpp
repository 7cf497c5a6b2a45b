#pragma once

// Artificial steering feel for the hand-wheel force-feedback motor.

#include <vector>

#include "hse/units.hpp"
#include "hse/vehicle.hpp"

namespace hse {

struct HapticParams {
  double b_hw = 0.5;                        // N m s/rad
  double J_hw = 0.03;                       // kg m^2
  double w_floor = 0.2;                     // assist weighting floor
  double w_sigma = units::deg2rad(3.0);     // rad, Gaussian width of the weighting
  double k_align = 0.0015;                  // m, effective trail / SR
  double k_jack = 2.0;                      // N m
};

[[nodiscard]] std::vector<Violation> validate(const HapticParams& hp);

/// Assist weighting: unity at zero front slip, falling to w_floor.
[[nodiscard]] double weighting(double alpha_f, const HapticParams& hp);

struct HandWheelMotion {
  double angle = 0.0;  // rad
  double rate = 0.0;   // rad/s
  double accel = 0.0;  // rad/s^2
};

struct SteeringTorque {
  double damping = 0.0;
  double inertia = 0.0;
  double weight = 1.0;
  double aligning = 0.0;
  double jacking = 0.0;
  double total = 0.0;  // N m at the hand wheel
};

/// Hand-wheel torque from damping, inertia and weighted aligning plus
/// jacking terms. `front_lateral_force` is the lumped front-axle tire force
/// at `alpha_f`.
[[nodiscard]] SteeringTorque steering_torque(double alpha_f, const HandWheelMotion& hw, double front_lateral_force,
                                             const HapticParams& hp);

/// Lumped front-axle lateral force the aligning term is driven by.
[[nodiscard]] double front_force_estimate(double alpha_f, const VehicleParams& p);

}  // namespace hse
