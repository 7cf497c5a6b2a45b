#include "hse/reference_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hse/errors.hpp"

namespace hse {

namespace {

using State = Eigen::Matrix<double, 5, 1>;  // r, uy, psi, E, N

constexpr double kLateralDecayTau = 0.1;  // s, below the speed floor

bool all_finite(const ReferenceState& s) {
  return std::isfinite(s.r) && std::isfinite(s.uy) && std::isfinite(s.psi) && std::isfinite(s.E) &&
         std::isfinite(s.N) && std::isfinite(s.Mz) && std::isfinite(s.Fy) && std::isfinite(s.ay);
}

}  // namespace

std::vector<Violation> validate(const PedalMap& map) {
  std::vector<Violation> out;
  if (!(map.F_throttle_max >= 0.0)) out.push_back({"F_throttle_max", "F_throttle_max must be non-negative"});
  if (!(map.F_brake_max >= 0.0)) out.push_back({"F_brake_max", "F_brake_max must be non-negative"});
  auto split = [&](const char* name, double front, double rear) {
    if (!(front >= 0.0 && front <= 1.0 && rear >= 0.0 && rear <= 1.0) || std::abs(front + rear - 1.0) > 1e-12)
      out.push_back({name, std::string(name) + " split must be in [0,1] and sum to 1"});
  };
  split("drive", map.drive_front, map.drive_rear);
  split("brake", map.brake_front, map.brake_rear);
  return out;
}

double scale_speed(double ux, double f) {
  if (!(f >= 1.0)) throw ConfigError("speed scaling factor must be >= 1");
  if (!(ux >= 0.0)) throw DomainError("measured speed must be non-negative");
  return f * ux;
}

WheelQuad<double> pedals_to_wheel_forces(const DriverInputs& in, const PedalMap& map) {
  const double drive = in.throttle * map.F_throttle_max;
  const double brake = in.brake * map.F_brake_max;
  const double front = drive * map.drive_front - brake * map.brake_front;
  const double rear = drive * map.drive_rear - brake * map.brake_rear;
  WheelQuad<double> out;
  out << front / 2, front / 2, rear / 2, rear / 2;
  return out;
}

double reference_front_angle(double delta_hw, const VehicleParams& p) {
  return std::clamp(delta_hw / p.SR, -p.delta_f_max, p.delta_f_max);
}

ReferenceState reference_step(const ReferenceState& state, const DriverInputs& in, SpeedSpan ux_measured, double f,
                              double dt, const VehicleParams& p, const PedalMap& pedals) {
  if (!(dt > 0.0)) throw ConfigError("reference_step: dt must be positive");
  const double ux0 = scale_speed(ux_measured.begin, f);
  const double ux1 = scale_speed(ux_measured.end, f);
  const double delta = reference_front_angle(in.delta_hw, p);
  WheelQuad<double> delta_w;
  delta_w << delta, delta, 0.0, 0.0;

  ReferenceState next = state;
  next.delta_f = delta;
  next.ux = ux1;
  next.ux_dot = (ux1 - ux0) / dt;

  if (ux0 < kLateralSpeedFloor) {
    const double decay = std::exp(-dt / kLateralDecayTau);
    next.r = state.r * decay;
    next.uy = state.uy * decay;
    const double ux_mid = 0.5 * (ux0 + ux1);
    next.E = state.E - ux_mid * std::sin(state.psi) * dt;
    next.N = state.N + ux_mid * std::cos(state.psi) * dt;
    next.Mz = next.Fy = next.ay = next.uy_dot = next.rdot = next.alpha_f = 0.0;
    next.wheel_Fx.setZero();
    next.wheel_Fy.setZero();
    return next;
  }

  const WheelQuad<double> sigma_x = longitudinal_slips(pedals_to_wheel_forces(in, pedals), p);
  auto speed_at = [&](double tau) { return ux0 + (ux1 - ux0) * (tau / dt); };

  auto deriv = [&](double tau, const State& x) {
    const double ux = speed_at(tau);
    const auto tires = evaluate_tires(ux, x[1], x[0], delta_w, sigma_x, p);
    const auto loads = aggregate_body_loads(tires.Fx, tires.Fy, delta_w, p);
    State dx;
    dx[0] = loads.Mz / p.Iz;
    dx[1] = loads.Fy / p.m - x[0] * ux;
    dx.tail<3>() = pose_rates(x[2], ux, x[1], x[0]);
    return dx;
  };

  State x;
  x << state.r, state.uy, state.psi, state.E, state.N;
  try {
    x = rk4_step(x, dt, deriv);
    next.r = x[0];
    next.uy = x[1];
    next.psi = x[2];
    next.E = x[3];
    next.N = x[4];

    const auto tires = evaluate_tires(ux1, next.uy, next.r, delta_w, sigma_x, p);
    const auto loads = aggregate_body_loads(tires.Fx, tires.Fy, delta_w, p);
    next.Mz = loads.Mz;
    next.Fy = loads.Fy;
    next.rdot = loads.Mz / p.Iz;
    next.uy_dot = loads.Fy / p.m - next.r * ux1;
    next.ay = next.uy_dot + next.r * ux1;
    next.alpha_f = single_track_front_slip(ux1, next.uy, next.r, delta, p);
    next.wheel_Fx = tires.Fx;
    next.wheel_Fy = tires.Fy;
  } catch (const DomainError& e) {
    std::ostringstream os;
    os << "reference model: " << e.what() << " (ux=" << ux1 << ", uy=" << state.uy << ", r=" << state.r << ")";
    throw IntegrationFault(os.str());
  }
  if (!all_finite(next)) {
    std::ostringstream os;
    os << "reference model: non-finite state (r=" << next.r << ", uy=" << next.uy << ", psi=" << next.psi << ")";
    throw IntegrationFault(os.str());
  }
  return next;
}

}  // namespace hse
