#include <doctest.h>

#include <cmath>
#include <random>

#include "hse/haptics.hpp"
#include "hse/reference_model.hpp"
#include "hse/units.hpp"

using namespace hse;

namespace {

const VehicleParams kP = default_params();

struct Release {
  double overshoot = 0.0;  // largest excursion past zero as a fraction of the start angle
  double final_angle = 0.0;
};

// Hands-off hand wheel: the feel torque is the only torque on the emulated
// inertia, so J_hw wheel_accel = remaining terms. The reference vehicle at
// constant speed supplies the front slip angle.
Release release(double start_deg, double ux, const HapticParams& hp) {
  const double dt = 0.0005;
  ReferenceState ref;
  DriverInputs in;
  in.delta_hw = units::deg2rad(start_deg);
  for (int i = 0; i < 8000; ++i) ref = reference_step(ref, in, ux, 1.0, dt, kP, PedalMap{});

  const double start = in.delta_hw;
  double angle = start, rate = 0.0, most_negative = 0.0;
  for (int i = 0; i < 12000; ++i) {
    const double alpha = ref.alpha_f;
    const double fy = front_force_estimate(alpha, kP);
    // Spring and damper parts: everything but the inertia term.
    const SteeringTorque t = steering_torque(alpha, {angle, rate, 0.0}, fy, hp);
    const double accel = t.total / hp.J_hw;
    rate += accel * dt;
    angle += rate * dt;
    in.delta_hw = angle;
    ref = reference_step(ref, in, ux, 1.0, dt, kP, PedalMap{});
    most_negative = std::min(most_negative, angle / start);
  }
  return {-most_negative, angle};
}

}  // namespace

TEST_CASE("assist weighting") {
  const HapticParams hp;
  CHECK(weighting(0.0, hp) == 1.0);
  CHECK(weighting(10.0, hp) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(weighting(hp.w_sigma, hp) == doctest::Approx(0.2 + 0.8 * std::exp(-0.5)).epsilon(1e-14));
  CHECK(weighting(hp.w_sigma, hp) == doctest::Approx(0.685).epsilon(1e-3));
  double prev = 1.0;
  for (double a = 0.0; a < 0.5; a += 0.001) {
    const double w = weighting(a, hp);
    CHECK(w <= prev);
    CHECK(w == weighting(-a, hp));
    prev = w;
  }
}

TEST_CASE("steering torque examples") {
  const HapticParams hp;
  CHECK(steering_torque(0.0, {}, 0.0, hp).total == 0.0);

  const SteeringTorque jack = steering_torque(0.0, {units::deg2rad(30.0), 0.0, 0.0}, 0.0, hp);
  CHECK(jack.total == doctest::Approx(-hp.k_jack * std::sin(units::deg2rad(60.0)) / 2).epsilon(1e-14));

  const SteeringTorque damp = steering_torque(0.0, {0.0, 2.0, -3.0}, 0.0, hp);
  CHECK(damp.damping == -2.0 * hp.b_hw);
  CHECK(damp.inertia == 3.0 * hp.J_hw);

  // Positive slip angle produces a rightward tire force; its aligning torque is positive.
  const double alpha = units::deg2rad(1.0);
  const SteeringTorque al = steering_torque(alpha, {}, front_force_estimate(alpha, kP), hp);
  CHECK(al.aligning > 0.0);
  CHECK(al.total == doctest::Approx(weighting(alpha, hp) * al.aligning));
}

TEST_CASE("steering torque is odd and bounded") {
  const HapticParams hp;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> a(-0.4, 0.4), ang(-9.0, 9.0), rate(-20.0, 20.0), acc(-200.0, 200.0);
  const double bound_static = hp.k_align * kP.mu * kP.Fz_f + hp.k_jack / 2;
  for (int i = 0; i < 5000; ++i) {
    const double al = a(rng);
    const HandWheelMotion hw{ang(rng), rate(rng), acc(rng)};
    const HandWheelMotion neg{-hw.angle, -hw.rate, -hw.accel};
    const double t = steering_torque(al, hw, front_force_estimate(al, kP), hp).total;
    const double tn = steering_torque(-al, neg, front_force_estimate(-al, kP), hp).total;
    CHECK(tn == doctest::Approx(-t).epsilon(1e-12));
    CHECK(std::abs(t) <= hp.b_hw * std::abs(hw.rate) + hp.J_hw * std::abs(hw.accel) + bound_static + 1e-9);
  }
}

TEST_CASE("parameter validation") {
  CHECK(validate(HapticParams{}).empty());
  HapticParams bad;
  bad.w_floor = 0.0;
  bad.b_hw = -1.0;
  CHECK(validate(bad).size() == 2);
}

TEST_CASE("released hand wheel returns to centre without large overshoot") {
  const HapticParams hp;
  for (double ux : {8.9408, 13.4112}) {
    for (double start : {30.0, -30.0}) {
      CAPTURE(ux);
      CAPTURE(start);
      const Release r = release(start, ux, hp);
      CHECK(r.overshoot <= 0.2);
      CHECK(std::abs(r.final_angle) < units::deg2rad(0.5));
    }
  }
}

TEST_CASE("released hand wheel settles at highway speed") {
  // The wheel and the vehicle's lateral mode couple more strongly with speed,
  // so only the return to centre is asserted here.
  const Release r = release(30.0, 26.8224, HapticParams{});
  CHECK(std::abs(r.final_angle) < units::deg2rad(0.5));
}
