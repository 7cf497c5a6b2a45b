#include "hse/haptics.hpp"

#include <cmath>

#include "hse/tire.hpp"

namespace hse {

std::vector<Violation> validate(const HapticParams& hp) {
  std::vector<Violation> out;
  auto non_negative = [&](const char* name, double v) {
    if (!(v >= 0.0)) out.push_back({name, std::string(name) + " must be non-negative"});
  };
  non_negative("b_hw", hp.b_hw);
  non_negative("J_hw", hp.J_hw);
  non_negative("w_sigma", hp.w_sigma);
  non_negative("k_align", hp.k_align);
  non_negative("k_jack", hp.k_jack);
  if (!(hp.w_floor > 0.0 && hp.w_floor <= 1.0)) out.push_back({"w_floor", "w_floor must lie in (0, 1]"});
  return out;
}

double weighting(double alpha_f, const HapticParams& hp) {
  if (hp.w_sigma == 0.0) return alpha_f == 0.0 ? 1.0 : hp.w_floor;
  const double z = alpha_f / hp.w_sigma;
  return hp.w_floor + (1.0 - hp.w_floor) * std::exp(-0.5 * z * z);
}

SteeringTorque steering_torque(double alpha_f, const HandWheelMotion& hw, double front_lateral_force,
                               const HapticParams& hp) {
  SteeringTorque t;
  t.damping = -hp.b_hw * hw.rate;
  t.inertia = -hp.J_hw * hw.accel;
  t.weight = weighting(alpha_f, hp);
  t.aligning = -hp.k_align * front_lateral_force;
  // Kingpin-geometry self-centering.
  t.jacking = -hp.k_jack * std::sin(2.0 * hw.angle) / 2.0;
  t.total = t.damping + t.inertia + t.weight * (t.aligning + t.jacking);
  return t;
}

double front_force_estimate(double alpha_f, const VehicleParams& p) {
  return lateral_force(alpha_f, front_axle_load(p));
}

}  // namespace hse
