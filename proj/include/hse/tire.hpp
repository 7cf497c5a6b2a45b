#pragma once

// Coupled-slip brush tire.
//
// Sign convention, used by every model in the project:
//   slip angle   alpha = atan(v_lat / v_long) - delta
//   lateral slip sigma_y = (sigma_x - 1) tan(alpha)
//   force        F_i = (sigma_i / sigma) F(sigma)
// so with sigma_x = 0 a positive slip angle gives a negative (rightward)
// lateral force, and positive lateral demand inverts to a negative alpha.

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <string>

#include "hse/errors.hpp"
#include "hse/vehicle.hpp"

namespace hse {

/// Fraction of mu*Fz a force demand is clamped to before any inversion.
inline constexpr double kDemandClamp = 0.98;

template <typename Scalar>
struct TireLoadCase {
  Scalar C{};   // cornering stiffness, N/rad
  Scalar mu{};
  Scalar Fz{};  // normal load, N

  Scalar peak_force() const { return mu * Fz; }
  /// Slip magnitude at which the contact patch is fully sliding.
  Scalar sigma_sl() const { return Scalar(3) * mu * Fz / C; }
};

using LoadCase = TireLoadCase<double>;

template <typename Scalar>
struct SlipState {
  Scalar sigma_x{};
  Scalar sigma_y{};
  Scalar alpha{};

  Scalar sigma() const {
    using std::sqrt;
    return sqrt(sigma_x * sigma_x + sigma_y * sigma_y);
  }
};

template <typename Scalar>
struct TireForce {
  Scalar Fx{};
  Scalar Fy{};
};

/// Lumped-axle load cases for the single-track uses (controller, haptics).
inline LoadCase front_axle_load(const VehicleParams& p) { return {p.Cf, p.mu, p.Fz_f}; }
inline LoadCase rear_axle_load(const VehicleParams& p) { return {p.Cr, p.mu, p.Fz_r}; }
/// Per-wheel load cases for the double-track models: half stiffness, half load.
inline LoadCase front_wheel_load(const VehicleParams& p) { return {p.Cf / 2, p.mu, p.Fz_f / 2}; }
inline LoadCase rear_wheel_load(const VehicleParams& p) { return {p.Cr / 2, p.mu, p.Fz_r / 2}; }

/// Magnitude of the brush force for combined slip `sigma`. Cubic up to
/// sigma_sl, mu*Fz beyond. Written as mu Fz (1 - (1 - s/s_sl)^3), which
/// expands to s C - s^2 C^2 / (3 mu Fz) + s^3 C^3 / (27 mu^2 Fz^2).
template <typename Scalar>
Scalar brush_force_magnitude(Scalar sigma, const TireLoadCase<Scalar>& load) {
  using std::isfinite;
  if (!isfinite(sigma) || sigma < Scalar(0))
    throw DomainError("brush_force_magnitude: slip must be finite and non-negative");
  const Scalar sl = load.sigma_sl();
  if (sigma >= sl) return load.peak_force();
  const Scalar rem = Scalar(1) - sigma / sl;
  return load.peak_force() * (Scalar(1) - rem * rem * rem);
}

/// Splits the brush force along the slip direction. Zero slip gives zero force.
template <typename Scalar>
TireForce<Scalar> coupled_forces(const SlipState<Scalar>& slip, const TireLoadCase<Scalar>& load) {
  using std::isfinite;
  if (!isfinite(slip.sigma_x) || !isfinite(slip.sigma_y))
    throw DomainError("coupled_forces: non-finite slip");
  const Scalar s = slip.sigma();
  if (s == Scalar(0)) return {Scalar(0), Scalar(0)};
  const Scalar f = brush_force_magnitude(s, load);
  return {slip.sigma_x / s * f, slip.sigma_y / s * f};
}

template <typename Scalar>
Scalar lateral_slip_from_alpha(Scalar sigma_x, Scalar alpha) {
  using std::abs;
  using std::tan;
  if (!(abs(alpha) < Scalar(std::numbers::pi / 2)))
    throw DomainError("lateral_slip_from_alpha: |alpha| must be below pi/2");
  return (sigma_x - Scalar(1)) * tan(alpha);
}

/// Demand clamped to +-kDemandClamp * mu * Fz.
template <typename Scalar>
Scalar clamp_demand(Scalar force, const TireLoadCase<Scalar>& load) {
  const Scalar lim = Scalar(kDemandClamp) * load.peak_force();
  return force > lim ? lim : (force < -lim ? -lim : force);
}

namespace detail {

// Slip magnitude producing |force| on the cubic branch (force already clamped).
template <typename Scalar>
Scalar slip_for_force(Scalar force_mag, const TireLoadCase<Scalar>& load) {
  using std::cbrt;
  const Scalar ratio = force_mag / load.peak_force();
  return load.sigma_sl() * (Scalar(1) - cbrt(Scalar(1) - ratio));
}

}  // namespace detail

/// Slip angle whose pure-lateral brush force equals the clamped demand.
template <typename Scalar>
Scalar invert_lateral(Scalar fy_desired, const TireLoadCase<Scalar>& load) {
  using std::abs;
  using std::atan;
  using std::isfinite;
  if (!isfinite(fy_desired)) throw DomainError("invert_lateral: non-finite demand");
  const Scalar f = clamp_demand(fy_desired, load);
  const Scalar s = detail::slip_for_force(abs(f), load);
  // sigma_y = -tan(alpha) carries the sign of the force.
  return f < Scalar(0) ? atan(s) : -atan(s);
}

/// Longitudinal slip whose pure-longitudinal brush force equals the clamped demand.
template <typename Scalar>
Scalar invert_longitudinal(Scalar fx_desired, const TireLoadCase<Scalar>& load) {
  using std::abs;
  using std::isfinite;
  if (!isfinite(fx_desired)) throw DomainError("invert_longitudinal: non-finite demand");
  const Scalar f = clamp_demand(fx_desired, load);
  const Scalar s = detail::slip_for_force(abs(f), load);
  return f < Scalar(0) ? -s : s;
}

/// Lateral-only (sigma_x = 0) brush force for slip angle `alpha`.
template <typename Scalar>
Scalar lateral_force(Scalar alpha, const TireLoadCase<Scalar>& load) {
  SlipState<Scalar> slip{Scalar(0), lateral_slip_from_alpha(Scalar(0), alpha), alpha};
  return coupled_forces(slip, load).Fy;
}

enum Wheel : int { kFL = 0, kFR = 1, kRL = 2, kRR = 3 };

template <typename Scalar>
using WheelQuad = Eigen::Array<Scalar, 4, 1>;

/// Per-wheel slip angles of a double-track body moving at (ux, uy, r).
template <typename Scalar>
WheelQuad<Scalar> wheel_slip_angles(Scalar ux, Scalar uy, Scalar r, const WheelQuad<Scalar>& delta,
                                    const VehicleParams& p) {
  using std::abs;
  using std::atan;
  const Scalar half_track = Scalar(p.d / 2);
  if (!(ux - abs(r) * half_track > Scalar(0)))
    throw DomainError("wheel_slip_angles: degenerate speed, ux - |r| d/2 must be positive");
  const Scalar front = uy + Scalar(p.a) * r;
  const Scalar rear = uy - Scalar(p.b) * r;
  const Scalar left = ux - r * half_track;
  const Scalar right = ux + r * half_track;
  WheelQuad<Scalar> alpha;
  alpha[kFL] = atan(front / left) - delta[kFL];
  alpha[kFR] = atan(front / right) - delta[kFR];
  alpha[kRL] = atan(rear / left) - delta[kRL];
  alpha[kRR] = atan(rear / right) - delta[kRR];
  return alpha;
}

}  // namespace hse
