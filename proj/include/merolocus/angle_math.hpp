#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace merolocus {

using Complex = std::complex<double>;

/// Points of the complex plane, s = sigma + i t.
using ComplexPoint = Complex;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps an angle onto (-pi, pi]. An exact -pi is sent to +pi.
inline double wrap_pi(double angle) noexcept {
  if (!std::isfinite(angle)) return angle;
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

/// Maps an angle onto [0, 2pi).
inline double normalize_2pi(double angle) noexcept {
  if (!std::isfinite(angle)) return angle;
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

/// Smallest absolute difference between two angles, in [0, pi].
inline double angular_distance(double a, double b) noexcept {
  return std::abs(wrap_pi(a - b));
}

/// The representative of `principal + 2 pi k` closest to `reference`.
inline double nearest_branch(double principal, double reference) noexcept {
  return principal + kTwoPi * std::round((reference - principal) / kTwoPi);
}

}  // namespace merolocus
