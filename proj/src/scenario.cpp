#include "hse/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hse/errors.hpp"

namespace hse {

namespace {

// Cosine blend from y0 to y1 as u goes 0 -> 1.
double blend(double y0, double y1, double u) {
  u = std::clamp(u, 0.0, 1.0);
  return y0 + (y1 - y0) * 0.5 * (1.0 - std::cos(units::kPi * u));
}

}  // namespace

ManeuverKind parse_maneuver_kind(std::string_view text) {
  if (text == "dlc") return ManeuverKind::kDlc;
  if (text == "weave") return ManeuverKind::kWeave;
  if (text == "straight") return ManeuverKind::kStraight;
  throw ConfigError("unknown maneuver kind '" + std::string(text) + "' (expected dlc, weave or straight)");
}

std::string to_string(ManeuverKind kind) {
  switch (kind) {
    case ManeuverKind::kDlc: return "dlc";
    case ManeuverKind::kWeave: return "weave";
    case ManeuverKind::kStraight: return "straight";
  }
  return "?";
}

double Maneuver::course_length() const {
  switch (kind) {
    case ManeuverKind::kDlc: return std::accumulate(dlc_sections.begin(), dlc_sections.end(), 0.0);
    case ManeuverKind::kWeave: return weave_wavelength * weave_cycles;
    case ManeuverKind::kStraight: return straight_length;
  }
  return 0.0;
}

double Maneuver::target_offset(double s) const {
  const double x = s - approach;
  if (x <= 0.0 || x >= course_length()) return 0.0;
  switch (kind) {
    case ManeuverKind::kStraight: return 0.0;
    case ManeuverKind::kWeave:
      // Alternates between the start lane and the lane `lane_offset` to the left.
      return 0.5 * lane_offset * (1.0 - std::cos(2.0 * units::kPi * x / weave_wavelength));
    case ManeuverKind::kDlc: {
      const auto& sec = dlc_sections;
      const double c1 = sec[0];
      const double h = c1 + sec[1];
      const double c2 = h + sec[2];
      const double e = c2 + sec[3];
      if (x < c1) return 0.0;
      if (x < h) return blend(0.0, lane_offset, (x - c1) / sec[1]);
      if (x < c2) return lane_offset;
      if (x < e) return blend(lane_offset, 0.0, (x - c2) / sec[3]);
      return 0.0;
    }
  }
  return 0.0;
}

std::vector<double> Maneuver::gate_stations() const {
  switch (kind) {
    case ManeuverKind::kStraight: return {approach, approach + course_length()};
    case ManeuverKind::kDlc: {
      const auto& sec = dlc_sections;
      const double hold_mid = approach + sec[0] + sec[1] + 0.5 * sec[2];
      const double exit_mid = approach + sec[0] + sec[1] + sec[2] + sec[3] + 0.5 * sec[4];
      return {approach + 0.5 * sec[0], hold_mid, exit_mid};
    }
    case ManeuverKind::kWeave: {
      std::vector<double> out;
      for (int i = 0; i < weave_cycles; ++i) out.push_back(approach + (i + 0.5) * weave_wavelength);
      return out;
    }
  }
  return {};
}

Maneuver build_maneuver(ManeuverKind kind, const ManeuverOverrides& o) {
  Maneuver m;
  m.kind = kind;
  switch (kind) {
    case ManeuverKind::kDlc:
      m.ux_target = units::mph2mps(30.0);
      m.f = 2.0;
      break;
    case ManeuverKind::kWeave:
      m.ux_target = units::mph2mps(60.0);
      m.f = 3.0;
      m.approach = 30.0;
      break;
    case ManeuverKind::kStraight:
      m.ux_target = units::mph2mps(30.0);
      m.f = 2.0;
      m.lane_offset = 0.0;
      break;
  }
  if (o.ux_target) m.ux_target = *o.ux_target;
  if (o.f) m.f = *o.f;
  if (o.lane_offset) m.lane_offset = *o.lane_offset;
  if (o.approach) m.approach = *o.approach;
  if (o.runout) m.runout = *o.runout;
  if (o.dlc_sections) m.dlc_sections = *o.dlc_sections;
  if (o.weave_wavelength) m.weave_wavelength = *o.weave_wavelength;
  if (o.weave_cycles) m.weave_cycles = *o.weave_cycles;
  if (o.straight_length) m.straight_length = *o.straight_length;

  if (!(m.f >= 1.0)) throw ConfigError("maneuver.f must be >= 1");
  if (!(m.ux_target > 0.0)) throw ConfigError("maneuver target speed must be positive");
  if (!(m.approach >= 0.0 && m.runout >= 0.0)) throw ConfigError("approach and runout must be non-negative");
  if (!std::isfinite(m.lane_offset)) throw ConfigError("lane offset must be finite");
  for (double s : m.dlc_sections)
    if (!(s > 0.0)) throw ConfigError("double lane change sections must be positive");
  if (!(m.weave_wavelength > 0.0) || m.weave_cycles < 1) throw ConfigError("weave geometry must be positive");
  if (!(m.straight_length > 0.0)) throw ConfigError("straight length must be positive");
  return m;
}

std::vector<Violation> validate(const DriverModel& d) {
  std::vector<Violation> out;
  if (!(d.preview_time > 0.0)) out.push_back({"preview_time", "preview time must be positive"});
  for (auto [name, v] : {std::pair{"steer_gain", d.steer_gain}, {"speed_kp", d.speed_kp}, {"speed_ki", d.speed_ki}})
    if (!std::isfinite(v)) out.push_back({name, std::string(name) + " must be finite"});
  if (!(d.hw_max > 0.0)) out.push_back({"hw_max", "hand-wheel limit must be positive"});
  if (!(d.hw_rate_limit > 0.0)) out.push_back({"hw_rate_limit", "hand-wheel rate limit must be positive"});
  if (!(d.hw_bandwidth > 0.0)) out.push_back({"hw_bandwidth", "hand-wheel bandwidth must be positive"});
  if (!(d.hw_damping > 0.0)) out.push_back({"hw_damping", "hand-wheel damping must be positive"});
  return out;
}

double previewed_error(const VirtualPose& pose, double ux_ref, const Maneuver& m, const DriverModel& model) {
  const double preview = model.preview_time * ux_ref;
  const double lateral = -pose.E;
  const double ahead = pose.N + preview * std::cos(pose.psi);
  const double projected = lateral + preview * std::sin(pose.psi);
  return m.target_offset(ahead) - projected;
}

double steering_demand(const VirtualPose& pose, double ux_ref, const Maneuver& m, const DriverModel& model) {
  const double demand = model.steer_gain * previewed_error(pose, ux_ref, m, model);
  return std::clamp(demand, -model.hw_max, model.hw_max);
}

DriverInputs driver_step(DriverState& st, const VirtualPose& pose, double ux_ref, const Maneuver& m,
                         const DriverModel& model, double dt) {
  const double demand = steering_demand(pose, ux_ref, m, model);
  const double wn = 2.0 * units::kPi * model.hw_bandwidth;
  const double accel = wn * wn * (demand - st.hw_angle) - 2.0 * model.hw_damping * wn * st.hw_rate;
  const double rate = std::clamp(st.hw_rate + accel * dt, -model.hw_rate_limit, model.hw_rate_limit);
  st.hw_accel = (rate - st.hw_rate) / dt;
  st.hw_rate = rate;
  st.hw_angle = std::clamp(st.hw_angle + rate * dt, -model.hw_max, model.hw_max);

  const double speed_err = m.ux_target - ux_ref;
  const double integral = st.speed_integral + speed_err * dt;
  const double u_unclamped = model.speed_kp * speed_err + model.speed_ki * integral;
  // Conditional integration keeps the governor out of windup at the pedal stops.
  if (std::abs(u_unclamped) < 1.0) st.speed_integral = integral;
  const double u = std::clamp(model.speed_kp * speed_err + model.speed_ki * st.speed_integral, -1.0, 1.0);

  DriverInputs in;
  in.delta_hw = st.hw_angle;
  in.throttle = std::max(0.0, u);
  in.brake = std::max(0.0, -u);
  return in;
}

}  // namespace hse
