#pragma once

#include <string>
#include <vector>

namespace hse {

/// Planar chassis, tire and actuator constants. Axle cornering stiffnesses
/// are lumped per axle; the double-track models split them per wheel.
struct VehicleParams {
  double m = 0.0;            // kg
  double Iz = 0.0;           // kg m^2
  double a = 0.0;            // CoM to front axle, m
  double b = 0.0;            // CoM to rear axle, m
  double d = 0.0;            // track width, m
  double SR = 0.0;           // steering ratio
  double Cf = 0.0;           // front axle cornering stiffness, N/rad
  double Cr = 0.0;           // rear axle cornering stiffness, N/rad
  double mu = 0.0;
  double delta_f_max = 0.0;  // rad
  double delta_r_max = 0.0;  // rad
  double seat_dx = 0.0;      // driver seat ahead of CoM, m
  double seat_dy = 0.0;      // driver seat left of CoM, m
  double g = 9.81;

  // Derived; refresh with update_derived() after editing primaries.
  double L = 0.0;
  double Fz_f = 0.0;
  double Fz_r = 0.0;

  void update_derived();
};

/// Returns a copy with L, Fz_f, Fz_r recomputed from the primaries.
[[nodiscard]] VehicleParams with_derived(VehicleParams p);

/// X1 research vehicle.
[[nodiscard]] VehicleParams default_params();

struct Violation {
  std::string field;
  std::string message;
};

/// Every violated invariant, empty when the parameter set is usable.
[[nodiscard]] std::vector<Violation> validate(const VehicleParams& p);

struct DriverInputs {
  double delta_hw = 0.0;  // hand-wheel angle, rad (may exceed SR * delta_f_max)
  double throttle = 0.0;  // [0, 1]
  double brake = 0.0;     // [0, 1]
};

struct Measurements {
  double ux = 0.0;    // m/s
  double uy = 0.0;    // m/s
  double r = 0.0;     // rad/s
  double ay = 0.0;    // m/s^2 at CoM
  double rdot = 0.0;  // rad/s^2
};

}  // namespace hse
