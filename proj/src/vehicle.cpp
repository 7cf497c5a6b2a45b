#include "hse/vehicle.hpp"

#include <cmath>
#include <numbers>

#include "hse/units.hpp"

namespace hse {

void VehicleParams::update_derived() {
  L = a + b;
  Fz_f = m * g * b / L;
  Fz_r = m * g * a / L;
}

VehicleParams with_derived(VehicleParams p) {
  p.update_derived();
  return p;
}

VehicleParams default_params() {
  VehicleParams p;
  p.m = 2000.0;
  p.Iz = 2400.0;
  p.a = 1.52;
  p.b = 1.35;
  p.d = 1.63;
  p.SR = 15.0;
  p.Cf = 75000.0;
  p.Cr = 110000.0;
  p.mu = 0.9;
  p.delta_f_max = units::deg2rad(18.0);
  p.delta_r_max = units::deg2rad(33.0);
  // Not published for X1; a plausible driver position.
  p.seat_dx = 0.4;
  p.seat_dy = 0.35;
  p.g = 9.81;
  p.update_derived();
  return p;
}

std::vector<Violation> validate(const VehicleParams& p) {
  std::vector<Violation> out;
  auto positive = [&](const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back({name, std::string(name) + " must be positive"});
  };
  positive("m", p.m);
  positive("Iz", p.Iz);
  positive("a", p.a);
  positive("b", p.b);
  positive("d", p.d);
  positive("Cf", p.Cf);
  positive("Cr", p.Cr);
  positive("g", p.g);
  if (!(p.mu > 0.0 && p.mu <= 2.0)) out.push_back({"mu", "mu must lie in (0, 2]"});
  if (!(p.SR >= 1.0)) out.push_back({"SR", "SR must be at least 1"});
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(p.delta_f_max > 0.0 && p.delta_f_max < half_pi))
    out.push_back({"delta_f_max", "delta_f_max must lie in (0, pi/2)"});
  if (!(p.delta_r_max > 0.0 && p.delta_r_max < half_pi))
    out.push_back({"delta_r_max", "delta_r_max must lie in (0, pi/2)"});
  if (!std::isfinite(p.seat_dx)) out.push_back({"seat_dx", "seat_dx must be finite"});
  if (!std::isfinite(p.seat_dy)) out.push_back({"seat_dy", "seat_dy must be finite"});
  if (p.L != p.a + p.b) out.push_back({"L", "L must equal a+b"});
  if (std::abs(p.Fz_f + p.Fz_r - p.m * p.g) > 1e-9 * p.m * p.g || !(p.Fz_f > 0.0) || !(p.Fz_r > 0.0))
    out.push_back({"Fz", "Fz_f + Fz_r must equal m*g"});
  return out;
}

}  // namespace hse
