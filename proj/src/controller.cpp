#include "hse/controller.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "hse/chassis.hpp"
#include "hse/errors.hpp"

namespace hse {

namespace {

constexpr int kMaxFixedPointIterations = 10;
constexpr double kFixedPointTol = 1e-8;  // rad

// Solves -a x + b y = Iz k_moment, -(x + y) = m k_force for the front/rear gain pair.
std::pair<double, double> solve_pair(double k_moment, double k_force, const VehicleParams& p) {
  const double L = p.a + p.b;
  if (!(std::abs(L) > 0.0)) throw ConfigError("solve_axle_gains: singular gain pairing (a + b == 0)");
  const double front = -(p.Iz * k_moment + p.b * p.m * k_force) / L;
  const double rear = -p.m * k_force - front;
  return {front, rear};
}

double trapezoid(double prev, double cur, double dt) { return 0.5 * (prev + cur) * dt; }

double slew(double prev, double target, double rate_limit, double dt) {
  const double step = rate_limit * dt;
  return prev + std::clamp(target - prev, -step, step);
}

}  // namespace

ErrorMatrixElements default_matrix_elements() {
  ErrorMatrixElements k;
  k << -24.9, -74.7, 1.2, 3.6, 3.0, 9.0, -15.0, -45.0;
  return k;
}

AxleGains solve_axle_gains(const ErrorMatrixElements& k, const VehicleParams& p) {
  AxleGains g;
  std::tie(g.K1r, g.K2r) = solve_pair(k[0], k[4], p);
  std::tie(g.K1rI, g.K2rI) = solve_pair(k[1], k[5], p);
  std::tie(g.K1uy, g.K2uy) = solve_pair(k[2], k[6], p);
  std::tie(g.K1uyI, g.K2uyI) = solve_pair(k[3], k[7], p);
  return g;
}

ErrorMatrixElements matrix_elements(const AxleGains& g, const VehicleParams& p) {
  auto moment = [&](double front, double rear) { return (-p.a * front + p.b * rear) / p.Iz; };
  auto force = [&](double front, double rear) { return (-front - rear) / p.m; };
  ErrorMatrixElements k;
  k << moment(g.K1r, g.K2r), moment(g.K1rI, g.K2rI), moment(g.K1uy, g.K2uy), moment(g.K1uyI, g.K2uyI),
      force(g.K1r, g.K2r), force(g.K1rI, g.K2rI), force(g.K1uy, g.K2uy), force(g.K1uyI, g.K2uyI);
  return k;
}

GainSet make_gain_set(const ErrorMatrixElements& k, double k_rsat, const VehicleParams& p) {
  if (!(k_rsat < 0.0)) throw ConfigError("K_rsat must be negative for stable saturated yaw tracking");
  return {k, solve_axle_gains(k, p), k_rsat};
}

GainSet default_gain_set(const VehicleParams& p) {
  return make_gain_set(default_matrix_elements(), kDefaultKrsat, p);
}

GainSet proportional_only(const GainSet& g) {
  GainSet out = g;
  for (int i : {1, 3, 5, 7}) out.elements[i] = 0.0;
  out.axle.K1rI = out.axle.K2rI = out.axle.K1uyI = out.axle.K2uyI = 0.0;
  return out;
}

Eigen::Matrix4d error_dynamics_matrix(const ErrorMatrixElements& k) {
  Eigen::Matrix4d A;
  A << k[0], k[1], k[2], k[3],
       1.0,  0.0,  0.0,  0.0,
       k[4], k[5], k[6], k[7],
       0.0,  0.0,  1.0,  0.0;
  return A;
}

Spectrum eigencheck(const ErrorMatrixElements& k) {
  Eigen::EigenSolver<Eigen::Matrix4d> solver(error_dynamics_matrix(k), /*computeEigenvectors=*/false);
  Eigen::Vector4cd ev = solver.eigenvalues();
  std::sort(ev.begin(), ev.end(), [](const std::complex<double>& x, const std::complex<double>& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  Spectrum s;
  s.eigenvalues = ev;
  s.stable = (ev.real().array() < 0.0).all();
  return s;
}

ControllerState engage(const Measurements& meas) {
  ControllerState s;
  s.uy_des = meas.uy;
  return s;
}

ControllerState desired_uy_update(ControllerState state, const ReferenceState& ref, const Measurements& meas,
                                  double dt) {
  const double integrand = ref.uy_dot + ref.r * ref.ux - meas.r * meas.ux;
  const double prev = state.has_prev ? state.prev_integrand : integrand;
  state.uy_des += trapezoid(prev, integrand, dt);
  state.prev_integrand = integrand;
  return state;
}

AxleForces axle_forces(double Fy_ref, double Mz_ref, const TrackingErrors& e, const AxleGains& g,
                       const VehicleParams& p) {
  const double L = p.a + p.b;
  AxleForces f;
  f.F1y = p.b * Fy_ref / L + Mz_ref / L + g.K1r * e.e_r + g.K1rI * e.int_e_r + g.K1uy * e.e_uy +
          g.K1uyI * e.int_e_uy;
  f.F2y = p.a * Fy_ref / L - Mz_ref / L + g.K2r * e.e_r + g.K2rI * e.int_e_r + g.K2uy * e.e_uy +
          g.K2uyI * e.int_e_uy;
  return f;
}

AxleSteering axle_steering(double F_body, double Fx, double kinematic_angle, const LoadCase& load, double seed) {
  AxleSteering out;
  auto angle_for = [&](double tire_force, bool& clamped) {
    clamped = std::abs(tire_force) > kDemandClamp * load.peak_force();
    return -invert_lateral(tire_force, load) + kinematic_angle;
  };

  double delta = seed;
  bool clamped = false;
  for (int i = 0; i < kMaxFixedPointIterations; ++i) {
    const double tire_force = (F_body - Fx * std::sin(delta)) / std::cos(delta);
    double next = std::isfinite(tire_force) ? angle_for(tire_force, clamped) : NAN;
    out.iterations = i + 1;
    if (!std::isfinite(next)) break;
    const bool done = std::abs(next - delta) < kFixedPointTol;
    delta = next;
    if (done) {
      out.delta = delta;
      out.force_clamped = clamped;
      return out;
    }
  }

  // Small-angle transform evaluated at the seed.
  out.converged = false;
  const double tire_force = F_body - Fx * seed;
  out.delta = angle_for(tire_force, clamped);
  out.force_clamped = clamped;
  if (!std::isfinite(out.delta)) throw ConvergenceError("steering conversion produced a non-finite angle");
  return out;
}

SteeringCommand forces_to_steering(double F1y, double F2y, double Fxf, double Fxr, const Measurements& meas,
                                   const VehicleParams& p, double seed_f, double seed_r) {
  if (!(meas.ux >= kLateralSpeedFloor)) throw DomainError("forces_to_steering: speed below the lateral floor");
  const double kin_f = std::atan((meas.uy + p.a * meas.r) / meas.ux);
  const double kin_r = std::atan((meas.uy - p.b * meas.r) / meas.ux);
  const AxleSteering front = axle_steering(F1y, Fxf, kin_f, front_axle_load(p), seed_f);
  const AxleSteering rear = axle_steering(F2y, Fxr, kin_r, rear_axle_load(p), seed_r);
  SteeringCommand cmd;
  cmd.demand_f = front.delta;
  cmd.demand_r = rear.delta;
  cmd.delta_f = std::clamp(front.delta, -p.delta_f_max, p.delta_f_max);
  cmd.delta_r = std::clamp(rear.delta, -p.delta_r_max, p.delta_r_max);
  cmd.saturated = std::abs(front.delta) > p.delta_f_max;
  cmd.force_clamped_f = front.force_clamped;
  cmd.force_clamped_r = rear.force_clamped;
  cmd.converged = front.converged && rear.converged;
  return cmd;
}

SaturationCommand saturation_rear_command(const Measurements& meas, double delta_f_held, double Mz_ref, double e_r,
                                          double Fxf, double Fxr, const GainSet& gains, const VehicleParams& p,
                                          double seed_r) {
  SaturationCommand out;
  out.alpha_f_est = single_track_front_slip(meas.ux, meas.uy, meas.r, delta_f_held, p);
  const double Fyf = lateral_force(out.alpha_f_est, front_axle_load(p));
  out.F1y_est = Fyf * std::cos(delta_f_held) + Fxf * std::sin(delta_f_held);
  out.F2y = (-Mz_ref + p.a * out.F1y_est + gains.K_rsat * e_r) / p.b;
  const double kin_r = std::atan((meas.uy - p.b * meas.r) / meas.ux);
  const AxleSteering rear = axle_steering(out.F2y, Fxr, kin_r, rear_axle_load(p), seed_r);
  out.delta_r = std::clamp(rear.delta, -p.delta_r_max, p.delta_r_max);
  out.converged = rear.converged;
  return out;
}

ControlOutput control_step(const ReferenceState& ref, const Measurements& meas, const ControllerState& state,
                           const GainSet& gains, const VehicleParams& p, double Fxf, double Fxr, double dt,
                           double rate_limit) {
  if (!(dt > 0.0)) throw ConfigError("control_step: dt must be positive");
  ControlOutput out;
  out.state = state;

  if (meas.ux < kLateralSpeedFloor || ref.ux < kLateralSpeedFloor) {
    out.delta_f = slew(state.delta_f, 0.0, rate_limit, dt);
    out.delta_r = slew(state.delta_r, 0.0, rate_limit, dt);
    out.state.delta_f = out.delta_f;
    out.state.delta_r = out.delta_r;
    out.state.saturated = false;
    return out;
  }

  ControllerState next = desired_uy_update(state, ref, meas, dt);
  TrackingErrors e;
  e.e_r = ref.r - meas.r;
  e.e_uy = next.uy_des - meas.uy;
  const double prev_e_r = state.has_prev ? state.prev_e_r : e.e_r;
  const double prev_e_uy = state.has_prev ? state.prev_e_uy : e.e_uy;
  e.int_e_r = state.int_e_r + trapezoid(prev_e_r, e.e_r, dt);
  e.int_e_uy = state.int_e_uy + trapezoid(prev_e_uy, e.e_uy, dt);

  out.forces = axle_forces(ref.Fy, ref.Mz, e, gains.axle, p);
  const SteeringCommand cmd =
      forces_to_steering(out.forces.F1y, out.forces.F2y, Fxf, Fxr, meas, p, state.delta_f, state.delta_r);
  out.fallback_used = !cmd.converged;

  double delta_f = cmd.delta_f;
  double delta_r = cmd.delta_r;
  if (cmd.saturated) {
    const auto sat = saturation_rear_command(meas, delta_f, ref.Mz, e.e_r, Fxf, Fxr, gains, p, state.delta_r);
    delta_r = sat.delta_r;
    out.forces.F1y = sat.F1y_est;
    out.forces.F2y = sat.F2y;
    out.fallback_used = out.fallback_used || !sat.converged;
    // Anti-windup: integral accumulators hold while lateral acceleration is abandoned.
    e.int_e_r = state.int_e_r;
    e.int_e_uy = state.int_e_uy;
  }
  next.int_e_r = e.int_e_r;
  next.int_e_uy = e.int_e_uy;
  next.prev_e_r = e.e_r;
  next.prev_e_uy = e.e_uy;
  next.has_prev = true;
  next.saturated = cmd.saturated;

  out.delta_f = std::clamp(slew(state.delta_f, delta_f, rate_limit, dt), -p.delta_f_max, p.delta_f_max);
  out.delta_r = std::clamp(slew(state.delta_r, delta_r, rate_limit, dt), -p.delta_r_max, p.delta_r_max);
  if (!std::isfinite(out.delta_f) || !std::isfinite(out.delta_r))
    throw ConvergenceError("controller produced a non-finite steering command");
  next.delta_f = out.delta_f;
  next.delta_r = out.delta_r;
  out.state = next;
  out.errors = e;
  out.saturated = cmd.saturated;
  return out;
}

}  // namespace hse
