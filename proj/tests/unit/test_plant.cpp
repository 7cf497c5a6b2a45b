#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "hse/errors.hpp"
#include "hse/plant.hpp"
#include "hse/reference_model.hpp"
#include "hse/units.hpp"

using namespace hse;

namespace {

const VehicleParams kP = default_params();
const WheelQuad<double> kNoPedals = WheelQuad<double>::Zero();

PlantConfig ideal() {
  PlantConfig c;
  c.actuator = ActuatorModel::ideal();
  return c;
}

double kinetic_energy(const PlantState& s) {
  return 0.5 * kP.m * (s.ux * s.ux + s.uy * s.uy) + 0.5 * kP.Iz * s.r * s.r;
}

}  // namespace

TEST_CASE("at rest with no inputs stays at rest") {
  PlantState s;
  for (int i = 0; i < 1000; ++i) s = plant_step(s, 0.0, 0.0, kNoPedals, 0.001, kP, PlantConfig{});
  CHECK(s.ux == 0.0);
  CHECK(s.uy == 0.0);
  CHECK(s.r == 0.0);
  CHECK(s.E == 0.0);
  CHECK(s.N == 0.0);
}

TEST_CASE("equal front and rear steer translates the vehicle sideways") {
  PlantState s;
  s.ux = 10.0;
  const double d = units::deg2rad(2.0);
  for (int i = 0; i < 10000; ++i) s = plant_step(s, d, d, kNoPedals, 0.001, kP, PlantConfig{});

  // Steady state of the linear single-track model with equal axle angles.
  const double u = s.ux, a = kP.a, b = kP.b, Cf = kP.Cf, Cr = kP.Cr;
  Eigen::Matrix2d A;
  Eigen::Vector2d rhs;
  // Lateral balance: Cf(d - (uy + a r)/u) + Cr(d - (uy - b r)/u) = m r u
  A << (Cf + Cr) / u, (Cf * a - Cr * b) / u + kP.m * u,
      // Moment balance: a Cf(d - (uy + a r)/u) - b Cr(d - (uy - b r)/u) = 0
      (a * Cf - b * Cr) / u, (a * a * Cf + b * b * Cr) / u;
  rhs << (Cf + Cr) * d, (a * Cf - b * Cr) * d;
  const Eigen::Vector2d sol = A.colPivHouseholderQr().solve(rhs);

  CHECK(s.uy > 0.0);
  CHECK(std::abs(s.r) < 0.05 * s.uy / kP.L);
  CHECK(s.uy == doctest::Approx(sol[0]).epsilon(0.02));
  CHECK(std::abs(s.r - sol[1]) < 2e-3);
}

TEST_CASE("measurement noise is zero-mean with the configured spread") {
  PlantState s;
  s.ux = 12.0;
  s.r = 0.3;
  CHECK(measure(s).r == 0.3);

  NoiseConfig n;
  CHECK(!n.enabled());
  std::mt19937_64 rng(3);
  CHECK(measure(s, n, rng).ux == 12.0);

  n.r = 0.01;
  const int N = 10000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < N; ++i) {
    const double v = measure(s, n, rng).r - 0.3;
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(sum / N) <= 3.0 * 0.01 / std::sqrt(N));
  CHECK(std::sqrt(sq / N) == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("actuator slews within the rate limit and lags the command") {
  const ActuatorModel m;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> cmd(-0.6, 0.6);
  double pos = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double c = (i % 50 == 0) ? cmd(rng) : pos + 0.001 * cmd(rng);
    const double next = actuate(pos, c, 0.001, m);
    CHECK(std::abs(next - pos) <= m.rate * 0.001 * (1 + 1e-12));
    pos = next;
  }
  // Small steps follow the first-order lag exactly.
  CHECK(actuate(0.0, 1e-3, 0.001, m) == doctest::Approx(1e-3 * (1 - std::exp(-0.001 / 0.02))).epsilon(1e-12));
  CHECK(actuate(0.0, 0.3, 0.001, ActuatorModel::ideal()) == 0.3);

  PlantConfig cfg;
  PlantState s;
  s.ux = 20.0;
  for (int i = 0; i < 500; ++i) {
    const PlantState n = plant_step(s, 0.5, -0.7, kNoPedals, 0.001, kP, cfg);
    CHECK(std::abs(n.delta_f_act - s.delta_f_act) <= cfg.actuator.rate * 0.001 * (1 + 1e-12));
    CHECK(std::abs(n.delta_f_act) <= kP.delta_f_max);
    CHECK(std::abs(n.delta_r_act) <= kP.delta_r_max);
    s = n;
  }
}

TEST_CASE("friction circle and energy with released pedals") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PlantState s;
  s.ux = 25.0;
  const PlantConfig cfg;
  double df = 0.0, dr = 0.0;
  for (int i = 0; i < 20000; ++i) {
    if (i % 300 == 0) {
      df = 0.12 * u(rng);
      dr = 0.04 * u(rng);
    }
    const double e0 = kinetic_energy(s);
    const PlantState n = plant_step(s, df, dr, kNoPedals, 0.001, kP, cfg);
    CHECK(kinetic_energy(n) <= e0 * (1 + 1e-12));
    for (int w = 0; w < 4; ++w) {
      const double limit = kP.mu * (w < kRL ? kP.Fz_f : kP.Fz_r) / 2;
      CHECK(std::hypot(n.wheel_Fx[w], n.wheel_Fy[w]) <= limit * (1 + 1e-12));
    }
    s = n;
  }
  CHECK(s.ux < 25.0);

  // Driven wheels stay inside the circle too.
  WheelQuad<double> pedals;
  pedals << 0.0, 0.0, 3000.0, 3000.0;
  s.ux = 15.0;
  for (int i = 0; i < 3000; ++i) {
    s = plant_step(s, 0.25, 0.0, pedals, 0.001, kP, cfg);
    for (int w = 0; w < 4; ++w) {
      const double limit = kP.mu * (w < kRL ? kP.Fz_f : kP.Fz_r) / 2;
      CHECK(std::hypot(s.wheel_Fx[w], s.wheel_Fy[w]) <= limit * (1 + 1e-12));
    }
  }
}

TEST_CASE("rear misalignment shows up in the measured states") {
  PlantConfig cfg;
  cfg.rear_bias = units::deg2rad(0.3);
  PlantState s;
  s.ux = 13.4;
  for (int i = 0; i < 3000; ++i) s = plant_step(s, 0.0, 0.0, kNoPedals, 0.001, kP, cfg);
  const Measurements m = measure(s);
  CHECK(m.r < -1e-3);  // rear toe-left yaws the car right
  CHECK(std::abs(m.uy) > 1e-3);
  CHECK(s.delta_r_act == 0.0);
}

TEST_CASE("at unit speed scale the plant reproduces the reference vehicle") {
  const double dt = 0.001;
  PlantState plant;
  plant.ux = 15.0;
  ReferenceState ref;
  const PedalMap pedals;
  const PlantConfig cfg = ideal();
  double worst_pose = 0.0, worst_state = 0.0;
  for (int i = 0; i < 30000; ++i) {
    const double t = i * dt;
    DriverInputs in;
    in.delta_hw = units::deg2rad(50.0) * std::sin(2 * M_PI * 0.3 * t) + units::deg2rad(20.0) * std::sin(2 * M_PI * 1.1 * t);
    in.throttle = t < 10.0 ? 0.3 : 0.0;
    in.brake = (t > 20.0 && t < 24.0) ? 0.2 : 0.0;
    const double ux_before = plant.ux;
    plant = plant_step(plant, reference_front_angle(in.delta_hw, kP), 0.0, pedals_to_wheel_forces(in, pedals), dt, kP,
                       cfg);
    ref = reference_step(ref, in, SpeedSpan{ux_before, plant.ux}, 1.0, dt, kP, pedals);
    worst_pose = std::max({worst_pose, std::abs(plant.E - ref.E), std::abs(plant.N - ref.N)});
    worst_state = std::max({worst_state, std::abs(plant.r - ref.r), std::abs(plant.uy - ref.uy),
                            std::abs(plant.psi - ref.psi)});
  }
  CHECK(worst_pose < 1e-3);
  CHECK(worst_state < 1e-6);
}

TEST_CASE("non-finite commands and bad steps are rejected") {
  PlantState s;
  s.ux = 10.0;
  CHECK_THROWS_AS((void)plant_step(s, NAN, 0.0, kNoPedals, 0.001, kP, PlantConfig{}), IntegrationFault);
  CHECK_THROWS_AS((void)plant_step(s, 0.0, 0.0, kNoPedals, -0.001, kP, PlantConfig{}), ConfigError);
}
