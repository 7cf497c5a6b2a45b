#pragma once

// Double-track planar chassis pieces shared by the reference model and the
// plant. Wheel order is FL, FR, RL, RR throughout.

#include <cmath>

#include "hse/tire.hpp"
#include "hse/vehicle.hpp"

namespace hse {

template <typename Scalar>
struct BodyLoads {
  Scalar Fx{};  // body-frame longitudinal, N
  Scalar Fy{};  // body-frame lateral, N
  Scalar Mz{};  // yaw moment about CoM, N m
};

/// Tire-frame forces at each contact patch resolved into body-frame totals.
/// With the rear wheels unsteered this is exactly the moment/force sum of the
/// double-track model; rear steering enters through the same projections.
template <typename Scalar>
BodyLoads<Scalar> aggregate_body_loads(const WheelQuad<Scalar>& fx, const WheelQuad<Scalar>& fy,
                                       const WheelQuad<Scalar>& delta, const VehicleParams& p) {
  const WheelQuad<Scalar> c = delta.cos();
  const WheelQuad<Scalar> s = delta.sin();
  const WheelQuad<Scalar> bx = fx * c - fy * s;
  const WheelQuad<Scalar> by = fx * s + fy * c;
  const Scalar half_track = Scalar(p.d / 2);
  BodyLoads<Scalar> out;
  out.Fx = bx.sum();
  out.Fy = by.sum();
  out.Mz = Scalar(p.a) * (by[kFL] + by[kFR]) - Scalar(p.b) * (by[kRL] + by[kRR]) +
           half_track * (-bx[kFL] + bx[kFR] - bx[kRL] + bx[kRR]);
  return out;
}

struct MomentForce {
  double Mz = 0.0;
  double Fy = 0.0;
};

inline MomentForce aggregate_moment_force(const WheelQuad<double>& fx, const WheelQuad<double>& fy,
                                          const WheelQuad<double>& delta, const VehicleParams& p) {
  const auto loads = aggregate_body_loads(fx, fy, delta, p);
  return {loads.Mz, loads.Fy};
}

template <typename Scalar>
struct TireOutputs {
  WheelQuad<Scalar> alpha;
  WheelQuad<Scalar> sigma_x;
  WheelQuad<Scalar> sigma_y;
  WheelQuad<Scalar> Fx;
  WheelQuad<Scalar> Fy;
};

inline LoadCase wheel_load(const VehicleParams& p, int wheel) {
  return wheel < kRL ? front_wheel_load(p) : rear_wheel_load(p);
}

/// Longitudinal slips realising per-wheel drive/brake force demands.
inline WheelQuad<double> longitudinal_slips(const WheelQuad<double>& fx_demand, const VehicleParams& p) {
  WheelQuad<double> sx;
  for (int i = 0; i < 4; ++i) sx[i] = invert_longitudinal(fx_demand[i], wheel_load(p, i));
  return sx;
}

/// Slip angles, coupled slips and tire-frame forces at every wheel.
template <typename Scalar>
TireOutputs<Scalar> evaluate_tires(Scalar ux, Scalar uy, Scalar r, const WheelQuad<Scalar>& delta,
                                   const WheelQuad<Scalar>& sigma_x, const VehicleParams& p) {
  TireOutputs<Scalar> t;
  t.alpha = wheel_slip_angles(ux, uy, r, delta, p);
  t.sigma_x = sigma_x;
  for (int i = 0; i < 4; ++i) {
    t.sigma_y[i] = lateral_slip_from_alpha(sigma_x[i], t.alpha[i]);
    const LoadCase load = wheel_load(p, i);
    const TireLoadCase<Scalar> l{Scalar(load.C), Scalar(load.mu), Scalar(load.Fz)};
    const auto f = coupled_forces(SlipState<Scalar>{sigma_x[i], t.sigma_y[i], t.alpha[i]}, l);
    t.Fx[i] = f.Fx;
    t.Fy[i] = f.Fy;
  }
  return t;
}

/// Heading/position rates of a body with heading psi measured from north,
/// east/north inertial coordinates, x forward and y left in the body.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> pose_rates(Scalar psi, Scalar ux, Scalar uy, Scalar r) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(psi);
  const Scalar s = sin(psi);
  return {r, -ux * s - uy * c, ux * c - uy * s};
}

/// Single-track front slip angle from body velocities and the front road-wheel angle.
inline double single_track_front_slip(double ux, double uy, double r, double delta_f, const VehicleParams& p) {
  return std::atan((uy + p.a * r) / ux) - delta_f;
}

inline double single_track_rear_slip(double ux, double uy, double r, double delta_r, const VehicleParams& p) {
  return std::atan((uy - p.b * r) / ux) - delta_r;
}

/// Classical fixed-step RK4 on an Eigen vector state.
template <typename Vec, typename Deriv>
Vec rk4_step(const Vec& x, double dt, Deriv&& f) {
  const Vec k1 = f(0.0, x);
  const Vec k2 = f(0.5 * dt, Vec(x + 0.5 * dt * k1));
  const Vec k3 = f(0.5 * dt, Vec(x + 0.5 * dt * k2));
  const Vec k4 = f(dt, Vec(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace hse
