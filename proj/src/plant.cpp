#include "hse/plant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hse/errors.hpp"
#include "hse/reference_model.hpp"

namespace hse {

namespace {

using State = Eigen::Matrix<double, 6, 1>;  // ux, uy, r, psi, E, N

constexpr double kLateralDecayTau = 0.1;

}  // namespace

double actuate(double position, double cmd, double dt, const ActuatorModel& model) {
  double step = cmd - position;
  if (model.tau > 0.0) step *= -std::expm1(-dt / model.tau);
  const double max_step = model.rate * dt;
  return position + std::clamp(step, -max_step, max_step);
}

PlantState plant_step(const PlantState& state, double delta_f_cmd, double delta_r_cmd,
                      const WheelQuad<double>& pedal_forces, double dt, const VehicleParams& p,
                      const PlantConfig& cfg) {
  if (!(dt > 0.0)) throw ConfigError("plant_step: dt must be positive");
  if (!std::isfinite(delta_f_cmd) || !std::isfinite(delta_r_cmd))
    throw IntegrationFault("plant: non-finite steering command");

  PlantState next = state;
  next.delta_f_act =
      std::clamp(actuate(state.delta_f_act, delta_f_cmd, dt, cfg.actuator), -p.delta_f_max, p.delta_f_max);
  next.delta_r_act =
      std::clamp(actuate(state.delta_r_act, delta_r_cmd, dt, cfg.actuator), -p.delta_r_max, p.delta_r_max);
  const double rear = next.delta_r_act + cfg.rear_bias;
  WheelQuad<double> delta_w;
  delta_w << next.delta_f_act, next.delta_f_act, rear, rear;

  if (state.ux < kLateralSpeedFloor) {
    const double decay = std::exp(-dt / kLateralDecayTau);
    next.uy = state.uy * decay;
    next.r = state.r * decay;
    next.ux = std::max(0.0, state.ux + pedal_forces.sum() / p.m * dt);
    const double ux_mid = 0.5 * (state.ux + next.ux);
    next.E = state.E - ux_mid * std::sin(state.psi) * dt;
    next.N = state.N + ux_mid * std::cos(state.psi) * dt;
    next.ay = next.rdot = next.Mz = next.Fy = next.alpha_f = 0.0;
    next.wheel_Fx.setZero();
    next.wheel_Fy.setZero();
    return next;
  }

  const WheelQuad<double> sigma_x = longitudinal_slips(pedal_forces, p);
  auto deriv = [&](double, const State& x) {
    const auto tires = evaluate_tires(x[0], x[1], x[2], delta_w, sigma_x, p);
    const auto loads = aggregate_body_loads(tires.Fx, tires.Fy, delta_w, p);
    State dx;
    dx[0] = loads.Fx / p.m + x[2] * x[1];
    dx[1] = loads.Fy / p.m - x[2] * x[0];
    dx[2] = loads.Mz / p.Iz;
    dx.tail<3>() = pose_rates(x[3], x[0], x[1], x[2]);
    return dx;
  };

  State x;
  x << state.ux, state.uy, state.r, state.psi, state.E, state.N;
  try {
    x = rk4_step(x, dt, deriv);
    next.ux = std::max(0.0, x[0]);
    next.uy = x[1];
    next.r = x[2];
    next.psi = x[3];
    next.E = x[4];
    next.N = x[5];
    if (next.ux >= kLateralSpeedFloor) {
      const auto tires = evaluate_tires(next.ux, next.uy, next.r, delta_w, sigma_x, p);
      const auto loads = aggregate_body_loads(tires.Fx, tires.Fy, delta_w, p);
      next.Mz = loads.Mz;
      next.Fy = loads.Fy;
      next.rdot = loads.Mz / p.Iz;
      next.ay = loads.Fy / p.m;  // uy_dot + r ux
      next.alpha_f = single_track_front_slip(next.ux, next.uy, next.r, next.delta_f_act, p);
      next.wheel_Fx = tires.Fx;
      next.wheel_Fy = tires.Fy;
    }
  } catch (const DomainError& e) {
    std::ostringstream os;
    os << "plant: " << e.what() << " (ux=" << state.ux << ", uy=" << state.uy << ", r=" << state.r << ")";
    throw IntegrationFault(os.str());
  }
  if (!x.allFinite() || !std::isfinite(next.ay)) {
    std::ostringstream os;
    os << "plant: non-finite state (ux=" << next.ux << ", uy=" << next.uy << ", r=" << next.r << ")";
    throw IntegrationFault(os.str());
  }
  return next;
}

Measurements measure(const PlantState& s) { return {s.ux, s.uy, s.r, s.ay, s.rdot}; }

Measurements measure(const PlantState& s, const NoiseConfig& noise, std::mt19937_64& rng) {
  Measurements m = measure(s);
  if (!noise.enabled()) return m;
  std::normal_distribution<double> n01(0.0, 1.0);
  // Fixed draw order keeps runs reproducible per seed.
  m.ux = std::max(0.0, m.ux + noise.ux * n01(rng));
  m.uy += noise.uy * n01(rng);
  m.r += noise.r * n01(rng);
  m.ay += noise.ay * n01(rng);
  m.rdot += noise.rdot * n01(rng);
  return m;
}

}  // namespace hse
