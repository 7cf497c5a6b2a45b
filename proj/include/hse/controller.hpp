#pragma once

// Four-wheel-steering tracking controller. The plant's yaw rate and lateral
// acceleration follow the reference vehicle through axle lateral force
// demands (feedforward from the reference tire forces plus PI feedback on
// yaw-rate and lateral-velocity errors), converted to road-wheel angles by
// inverting the lumped brush tire.

#include <Eigen/Core>
#include <complex>

#include "hse/plant.hpp"
#include "hse/reference_model.hpp"
#include "hse/tire.hpp"
#include "hse/vehicle.hpp"

namespace hse {

/// Elements K1..K8 of the closed-loop error-dynamics matrix (index 0 is K1).
using ErrorMatrixElements = Eigen::Matrix<double, 8, 1>;

/// The eight axle-level feedback gains of the force control law.
struct AxleGains {
  double K1r = 0.0;    // front, yaw-rate error, N s/rad
  double K1rI = 0.0;   // front, integrated yaw-rate error, N/rad
  double K1uy = 0.0;   // front, lateral-velocity error, N s/m
  double K1uyI = 0.0;  // front, integrated lateral-velocity error, N/m
  double K2r = 0.0;
  double K2rI = 0.0;
  double K2uy = 0.0;
  double K2uyI = 0.0;
};

/// Shipped matrix elements: K1..K8 = -24.9, -74.7, 1.2, 3.6, 3.0, 9.0, -15.0, -45.0.
[[nodiscard]] ErrorMatrixElements default_matrix_elements();
inline constexpr double kDefaultKrsat = -12000.0;  // N m s

struct GainSet {
  ErrorMatrixElements elements = ErrorMatrixElements::Zero();
  AxleGains axle;
  double K_rsat = kDefaultKrsat;
};

/// Solves the four independent 2x2 systems pairing (K1,K5), (K2,K6), (K3,K7), (K4,K8).
[[nodiscard]] AxleGains solve_axle_gains(const ErrorMatrixElements& k, const VehicleParams& p);

/// Forward map: matrix elements implied by a set of axle gains.
[[nodiscard]] ErrorMatrixElements matrix_elements(const AxleGains& g, const VehicleParams& p);

/// Gain set synthesised from matrix elements.
[[nodiscard]] GainSet make_gain_set(const ErrorMatrixElements& k, double k_rsat, const VehicleParams& p);
[[nodiscard]] GainSet default_gain_set(const VehicleParams& p);

/// Copy with the integral gains (K2, K4, K6, K8 and their axle gains) zeroed.
[[nodiscard]] GainSet proportional_only(const GainSet& g);

/// State matrix acting on (e_r', e_r, e_ay, e_uy).
[[nodiscard]] Eigen::Matrix4d error_dynamics_matrix(const ErrorMatrixElements& k);

struct Spectrum {
  Eigen::Vector4cd eigenvalues;
  bool stable = false;
};

[[nodiscard]] Spectrum eigencheck(const ErrorMatrixElements& k);

struct ControllerState {
  double uy_des = 0.0;      // m/s
  double int_e_r = 0.0;     // rad
  double int_e_uy = 0.0;    // m
  double prev_e_r = 0.0;
  double prev_e_uy = 0.0;
  double prev_integrand = 0.0;  // desired lateral acceleration of the last update
  bool has_prev = false;
  bool saturated = false;
  double delta_f = 0.0;  // last commands, rad
  double delta_r = 0.0;
};

/// Fresh controller state engaged on the current measurement.
[[nodiscard]] ControllerState engage(const Measurements& meas);

/// Trapezoidal update of the desired lateral velocity from the reference
/// (uy_dot, r, ux) and the measured (r, ux).
[[nodiscard]] ControllerState desired_uy_update(ControllerState state, const ReferenceState& ref,
                                                const Measurements& meas, double dt);

struct TrackingErrors {
  double e_r = 0.0;
  double e_uy = 0.0;
  double int_e_r = 0.0;
  double int_e_uy = 0.0;
};

struct AxleForces {
  double F1y = 0.0;  // front axle, body frame, N
  double F2y = 0.0;  // rear axle, body frame, N
};

[[nodiscard]] AxleForces axle_forces(double Fy_ref, double Mz_ref, const TrackingErrors& err, const AxleGains& g,
                                     const VehicleParams& p);

/// One axle's road-wheel angle for a body-frame lateral force demand.
struct AxleSteering {
  double delta = 0.0;        // unclamped demand, rad
  bool force_clamped = false;  // tire-frame demand hit the 0.98 mu Fz clamp
  bool converged = true;
  int iterations = 0;
};

/// Resolves the angle/force circularity of the body-to-tire transform by
/// fixed-point iteration seeded with `seed`; falls back to the small-angle
/// transform when it does not settle within 10 iterations.
[[nodiscard]] AxleSteering axle_steering(double F_body, double Fx, double kinematic_angle, const LoadCase& load,
                                         double seed);

struct SteeringCommand {
  double delta_f = 0.0;  // clamped to actuator limits
  double delta_r = 0.0;
  double demand_f = 0.0;  // before clamping
  double demand_r = 0.0;
  bool saturated = false;  // |demand_f| > delta_f_max
  bool force_clamped_f = false;
  bool force_clamped_r = false;
  bool converged = true;
};

/// Converts axle force demands to front/rear road-wheel angles.
[[nodiscard]] SteeringCommand forces_to_steering(double F1y, double F2y, double Fxf, double Fxr,
                                                 const Measurements& meas, const VehicleParams& p,
                                                 double seed_f = 0.0, double seed_r = 0.0);

struct SaturationCommand {
  double alpha_f_est = 0.0;
  double F1y_est = 0.0;
  double F2y = 0.0;
  double delta_r = 0.0;  // clamped to the rear limit
  bool converged = true;
};

/// Rear-only yaw-rate tracking while the front axle is held at `delta_f_held`.
[[nodiscard]] SaturationCommand saturation_rear_command(const Measurements& meas, double delta_f_held, double Mz_ref,
                                                        double e_r, double Fxf, double Fxr, const GainSet& gains,
                                                        const VehicleParams& p, double seed_r = 0.0);

/// Lateral acceleration at a point dx ahead of and dy left of the CoM.
[[nodiscard]] constexpr double seat_acceleration(double ay, double r, double rdot, double dx, double dy) {
  return ay + rdot * dx - r * r * dy;
}

struct ControlOutput {
  double delta_f = 0.0;
  double delta_r = 0.0;
  ControllerState state;
  TrackingErrors errors;
  AxleForces forces;
  bool saturated = false;
  bool fallback_used = false;  // small-angle fallback of the steering conversion
};

/// One controller tick: desired lateral velocity, errors, force law,
/// steering conversion or saturation fallback, anti-windup and slew limit.
/// `Fxf`, `Fxr` are the driver's axle longitudinal force demands.
[[nodiscard]] ControlOutput control_step(const ReferenceState& ref, const Measurements& meas,
                                         const ControllerState& state, const GainSet& gains, const VehicleParams& p,
                                         double Fxf, double Fxr, double dt, double rate_limit);

}  // namespace hse
