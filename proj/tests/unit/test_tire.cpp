#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hse/chassis.hpp"
#include "hse/tire.hpp"

using namespace hse;

namespace {

const LoadCase kFront{75000.0, 0.9, 9229.0};

// Expanded cubic, evaluated term by term.
double cubic_oracle(double s, const LoadCase& l) {
  const double mf = l.mu * l.Fz;
  if (s >= 3.0 * mf / l.C) return mf;
  return s * l.C - s * s * l.C * l.C / (3.0 * mf) + s * s * s * l.C * l.C * l.C / (27.0 * mf * mf);
}

// Slip for a force magnitude by plain bisection on the cubic branch.
double bisect_slip(double f, const LoadCase& l) {
  double lo = 0.0, hi = l.sigma_sl();
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cubic_oracle(mid, l) < f ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("brush force magnitude: examples") {
  CHECK(brush_force_magnitude(0.0, kFront) == 0.0);
  CHECK(brush_force_magnitude(kFront.sigma_sl(), kFront) == doctest::Approx(0.9 * 9229.0).epsilon(1e-14));
  const double f = brush_force_magnitude(0.1, kFront);
  CHECK(f == doctest::Approx(cubic_oracle(0.1, kFront)).epsilon(1e-12));
  CHECK(f == doctest::Approx(5469.0).epsilon(5e-4));
  CHECK(brush_force_magnitude(10.0, kFront) == 0.9 * 9229.0);
}

TEST_CASE("brush force magnitude: domain errors") {
  CHECK_THROWS_AS((void)brush_force_magnitude(-1e-3, kFront), DomainError);
  CHECK_THROWS_AS((void)brush_force_magnitude(std::nan(""), kFront), DomainError);
  CHECK_THROWS_AS((void)brush_force_magnitude(std::numeric_limits<double>::infinity(), kFront), DomainError);
}

TEST_CASE("brush force is C1 at full sliding onset") {
  const double sl = kFront.sigma_sl();
  const double C = kFront.C;
  for (double eps : {1e-4, 1e-5, 1e-6}) {
    const double left = (brush_force_magnitude(sl, kFront) - brush_force_magnitude(sl - eps, kFront)) / eps;
    const double right = (brush_force_magnitude(sl + eps, kFront) - brush_force_magnitude(sl, kFront)) / eps;
    CHECK(std::abs(left) <= 1e-3 * C);
    CHECK(std::abs(right) <= 1e-3 * C);
  }
  // Value continuity.
  CHECK(brush_force_magnitude(sl - 1e-12, kFront) == doctest::Approx(kFront.peak_force()).epsilon(1e-9));
}

TEST_CASE("brush force: friction circle, monotone, small-slip linear") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> C(2e4, 2e5), mu(0.2, 2.0), Fz(500.0, 2e4), u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const LoadCase l{C(rng), mu(rng), Fz(rng)};
    const double s1 = 2.0 * l.sigma_sl() * u(rng);
    const double s2 = s1 + 0.1 * l.sigma_sl() * u(rng);
    const double f1 = brush_force_magnitude(s1, l);
    CHECK(f1 <= l.peak_force());
    CHECK(f1 >= 0.0);
    CHECK(brush_force_magnitude(s2, l) >= f1);
    const double small = 0.01 * l.sigma_sl() * u(rng);
    if (small > 0.0) CHECK(std::abs(brush_force_magnitude(small, l) - l.C * small) <= 0.01 * l.C * small);
  }
}

TEST_CASE("coupled forces split along the slip direction") {
  const auto zero = coupled_forces(SlipState<double>{0.0, 0.0, 0.0}, kFront);
  CHECK(zero.Fx == 0.0);
  CHECK(zero.Fy == 0.0);

  const auto f = coupled_forces(SlipState<double>{0.06, 0.08, 0.0}, kFront);
  CHECK(f.Fx / f.Fy == doctest::Approx(6.0 / 8.0).epsilon(1e-12));
  CHECK(std::hypot(f.Fx, f.Fy) == doctest::Approx(brush_force_magnitude(0.1, kFront)).epsilon(1e-12));

  const auto lat = coupled_forces(SlipState<double>{0.0, 0.1, 0.0}, kFront);
  CHECK(lat.Fx == 0.0);
  CHECK(lat.Fy == doctest::Approx(cubic_oracle(0.1, kFront)).epsilon(1e-12));
}

TEST_CASE("lateral slip from slip angle") {
  const double alpha = std::atan(0.1);
  CHECK(lateral_slip_from_alpha(0.0, 0.0) == 0.0);
  CHECK(lateral_slip_from_alpha(0.0, alpha) == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(lateral_slip_from_alpha(0.5, alpha) == doctest::Approx(-0.05).epsilon(1e-14));
  CHECK_THROWS_AS((void)lateral_slip_from_alpha(0.0, std::numbers::pi / 2), DomainError);
  CHECK_THROWS_AS((void)lateral_slip_from_alpha(0.0, -2.0), DomainError);
}

TEST_CASE("lateral inversion: examples and sign convention") {
  CHECK(invert_lateral(0.0, kFront) == 0.0);

  const double alpha = std::atan(0.1);
  const double fy = lateral_force(alpha, kFront);
  CHECK(fy < 0.0);  // positive slip angle pushes right
  CHECK(fy == doctest::Approx(-cubic_oracle(0.1, kFront)).epsilon(1e-12));
  CHECK(invert_lateral(fy, kFront) == doctest::Approx(alpha).epsilon(1e-9));
  CHECK(invert_lateral(-fy, kFront) < 0.0);

  const double mf = kFront.peak_force();
  CHECK(invert_lateral(2.0 * mf, kFront) == invert_lateral(0.98 * mf, kFront));
  CHECK(invert_lateral(-2.0 * mf, kFront) == invert_lateral(-0.98 * mf, kFront));
  CHECK_THROWS_AS((void)invert_lateral(std::nan(""), kFront), DomainError);
}

TEST_CASE("longitudinal inversion: examples") {
  CHECK(invert_longitudinal(0.0, kFront) == 0.0);
  const double fx = brush_force_magnitude(0.1, kFront);
  CHECK(invert_longitudinal(fx, kFront) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(invert_longitudinal(-fx, kFront) == doctest::Approx(-0.1).epsilon(1e-9));
  CHECK(invert_longitudinal(5.0 * kFront.peak_force(), kFront) ==
        invert_longitudinal(0.98 * kFront.peak_force(), kFront));
}

TEST_CASE("inversions agree with a bisection oracle and round-trip the forward model") {
  const VehicleParams p = default_params();
  std::mt19937_64 rng(2024);
  for (const LoadCase& l : {front_axle_load(p), rear_axle_load(p)}) {
    std::uniform_real_distribution<double> demand(-0.98 * l.peak_force(), 0.98 * l.peak_force());
    for (int i = 0; i < 2000; ++i) {
      const double f = demand(rng);
      const double alpha = invert_lateral(f, l);
      CHECK(std::abs(lateral_force(alpha, l) - f) <= 1e-6);
      CHECK(std::abs(std::tan(std::abs(alpha)) - bisect_slip(std::abs(f), l)) <= 1e-10);
      CHECK(invert_lateral(-f, l) == doctest::Approx(-alpha).epsilon(1e-15));

      const double sx = invert_longitudinal(f, l);
      const auto fwd = coupled_forces(SlipState<double>{sx, 0.0, 0.0}, l);
      CHECK(std::abs(fwd.Fx - f) <= 1e-6);
    }
  }
}

TEST_CASE("wheel slip angles") {
  const VehicleParams p = default_params();
  const WheelQuad<double> none = WheelQuad<double>::Zero();
  CHECK(wheel_slip_angles(10.0, 0.0, 0.0, none, p).isZero());

  const auto a = wheel_slip_angles(10.0, 0.0, 0.2, none, p);
  CHECK(a[kFL] == doctest::Approx(std::atan(1.52 * 0.2 / (10.0 - 0.2 * 0.815))).epsilon(1e-14));
  CHECK(a[kFL] == doctest::Approx(0.0309).epsilon(1e-2).scale(0.0));
  CHECK(a[kFR] == doctest::Approx(std::atan(1.52 * 0.2 / (10.0 + 0.2 * 0.815))).epsilon(1e-14));
  CHECK(a[kRL] == doctest::Approx(std::atan(-1.35 * 0.2 / (10.0 - 0.2 * 0.815))).epsilon(1e-14));
  CHECK(a[kRR] == doctest::Approx(std::atan(-1.35 * 0.2 / (10.0 + 0.2 * 0.815))).epsilon(1e-14));

  WheelQuad<double> steer;
  steer << 0.05, 0.05, 0.0, 0.0;
  const auto b = wheel_slip_angles(10.0, 0.0, 0.0, steer, p);
  CHECK(b[kFL] == doctest::Approx(-0.05));
  CHECK(b[kRR] == 0.0);

  CHECK_THROWS_AS((void)wheel_slip_angles(0.5, 0.0, 2.0, none, p), DomainError);
}

TEST_CASE("tire functions are generic over the scalar type") {
  const TireLoadCase<float> lf{75000.0f, 0.9f, 9229.0f};
  const float f = brush_force_magnitude(0.1f, lf);
  CHECK(f == doctest::Approx(cubic_oracle(0.1, kFront)).epsilon(1e-5));
  const TireLoadCase<long double> ll{75000.0L, 0.9L, 9229.0L};
  CHECK(static_cast<double>(invert_lateral(-5000.0L, ll)) == doctest::Approx(invert_lateral(-5000.0, kFront)));
}
