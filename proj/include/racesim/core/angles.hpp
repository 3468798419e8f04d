#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

namespace racesim {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into (-pi, pi]. Exactly idempotent: wrapping an already
/// wrapped value returns it bit-identically.
inline double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);  // exact, r in [-pi, pi]
  if (r <= -kPi) r = kPi;
  return r;
}

/// Yaw of the Z-Y-X Euler decomposition of a unit quaternion (body->world,
/// Hamilton, scalar-first). Result in (-pi, pi].
inline double quat_to_yaw(const Eigen::Quaterniond& q) {
  const double siny = 2.0 * (q.w() * q.z() + q.x() * q.y());
  const double cosy = 1.0 - 2.0 * (q.y() * q.y() + q.z() * q.z());
  return std::atan2(siny, cosy);
}

/// Quaternion for a pure rotation about world Z.
inline Eigen::Quaterniond yaw_to_quat(double yaw) {
  return Eigen::Quaterniond(std::cos(0.5 * yaw), 0.0, 0.0, std::sin(0.5 * yaw));
}

/// Geodesic angle between two unit quaternions, in [0, pi].
inline double quat_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  const double d = std::min(1.0, std::abs(a.dot(b)));
  return 2.0 * std::acos(d);
}

/// Interpolates from angle `a` toward angle `b` along the shorter wrapped arc.
/// t=0 gives wrap(a), t=1 gives an angle congruent to b.
inline double lerp_angle(double a, double b, double t) {
  return wrap_angle(a + t * wrap_angle(b - a));
}

}  // namespace racesim
