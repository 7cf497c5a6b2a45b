#pragma once

#include <numbers>

// SI internally. Degrees and mph only cross the I/O boundary through these.
namespace hse::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kMetersPerMile = 1609.344;

template <typename Scalar>
constexpr Scalar deg2rad(Scalar deg) {
  return deg * Scalar(kPi / 180.0);
}

template <typename Scalar>
constexpr Scalar rad2deg(Scalar rad) {
  return rad * Scalar(180.0 / kPi);
}

constexpr double mph2mps(double mph) { return mph * kMetersPerMile / 3600.0; }
constexpr double mps2mph(double mps) { return mps * 3600.0 / kMetersPerMile; }

}  // namespace hse::units
