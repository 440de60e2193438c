#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gkm {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Representative of `theta` in [0, 2*pi).
inline double reduce_angle(double theta) noexcept {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2*pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Geodesic distance on the circle R / 2piZ, in [0, pi].
inline double circle_distance(double a, double b) noexcept {
  const double d = std::abs(reduce_angle(a) - reduce_angle(b));
  return std::min(d, kTwoPi - d);
}

/// Geodesic distance on the unit-length circle R / Z, in [0, 1/2].
inline double unit_circle_distance(double x, double y) noexcept {
  double d = std::abs(x - y);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

}  // namespace gkm
