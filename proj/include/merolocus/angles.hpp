#pragma once

// Closed-form departure and arrival angles of constant-degree loci at finite
// poles and zeros, and the degree-gap relations that follow from them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "merolocus/angle_math.hpp"
#include "merolocus/error.hpp"
#include "merolocus/function_model.hpp"
#include "merolocus/phase_gain.hpp"

namespace merolocus {

enum class AngleKind { Departure, Arrival };

struct DirectionAngle {
  double theta = 0.0;  // counterclockwise from the positive real axis, in [0, 2pi)
  double raw = 0.0;    // the affine value before normalization
  AngleKind kind = AngleKind::Departure;
  std::size_t anchor_index = 0;
  PhaseTarget degree;
};

struct FanEntry {
  PhaseTarget degree;
  DirectionAngle angle;
};

struct AngleFan {
  std::size_t anchor_index = 0;
  AngleKind kind = AngleKind::Departure;
  std::vector<FanEntry> entries;
};

namespace detail {

/// Phase of W near the anchor factor `a` is `constant + w_a * arg(s - c_a)`;
/// returns that constant, i.e. every other factor evaluated at the anchor.
inline double anchor_phase_constant(const MeromorphicSpec& spec, const std::vector<Factor>& fs,
                                    std::size_t a) {
  const Factor& anchor = fs[a];
  const Complex at = anchor.center;
  double r = spec.prefactor.polynomial(at).imag();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Factor& f = fs[i];
    r += correction_log(f, at).imag();
    if (i == a) {
      r -= f.weight * f.arg_offset;
      continue;
    }
    if (f.center == at) {
      throw Error(ErrorCode::DegenerateGeometry, "another zero or pole coincides with the anchor");
    }
    r += f.weight * (std::arg(at - f.center) - f.arg_offset);
  }
  return r;
}

inline std::size_t factor_position(const std::vector<Factor>& fs, FactorRole role, std::size_t index) {
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].role == role && fs[i].index == index) return i;
  }
  throw Error(ErrorCode::InvalidIndex, "no such anchor: " + std::to_string(index));
}

/// Unnormalized direction of the locus of the given degree at factor `a`.
inline double anchor_angle_raw(const MeromorphicSpec& spec, const std::vector<Factor>& fs,
                               std::size_t a, const PhaseTarget& target) {
  const double constant = anchor_phase_constant(spec, fs, a);
  return (target.degree() - constant) / fs[a].weight;
}

}  // namespace detail

inline DirectionAngle departure_angle(const MeromorphicSpec& spec, std::size_t pole_index,
                                      const PhaseTarget& target) {
  if (pole_index >= spec.poles.size()) {
    throw Error(ErrorCode::InvalidIndex, "pole index " + std::to_string(pole_index) + " out of range");
  }
  const auto fs = detail::factors(spec);
  const std::size_t a = detail::factor_position(fs, FactorRole::Pole, pole_index);
  const double raw = detail::anchor_angle_raw(spec, fs, a, target);
  return {normalize_2pi(raw), raw, AngleKind::Departure, pole_index, target};
}

inline DirectionAngle arrival_angle(const MeromorphicSpec& spec, std::size_t zero_index,
                                    const PhaseTarget& target) {
  if (zero_index >= spec.zeros.size()) {
    throw Error(ErrorCode::InvalidIndex, "zero index " + std::to_string(zero_index) + " out of range");
  }
  const auto fs = detail::factors(spec);
  const std::size_t a = detail::factor_position(fs, FactorRole::Zero, zero_index);
  const double raw = detail::anchor_angle_raw(spec, fs, a, target);
  return {normalize_2pi(raw), raw, AngleKind::Arrival, zero_index, target};
}

/// Degree difference of the two loci leaving a pole in opposite directions.
inline double opposite_gap_pole(double beta_k) {
  if (!(beta_k > 0.0)) throw Error(ErrorCode::NonPositiveExponent, "pole exponent must be positive");
  return beta_k * kPi;
}

/// Degree difference of the two loci entering a zero from opposite directions.
inline double opposite_gap_zero(double gamma_k) {
  if (!(gamma_k > 0.0)) throw Error(ErrorCode::NonPositiveExponent, "zero exponent must be positive");
  return gamma_k * kPi;
}

namespace detail {

template <class AngleFn>
AngleFan make_fan(std::size_t anchor, AngleKind kind, std::span<const PhaseTarget> degrees,
                  AngleFn&& angle_of) {
  AngleFan fan{anchor, kind, {}};
  fan.entries.reserve(degrees.size());
  for (const PhaseTarget& d : degrees) fan.entries.push_back({d, angle_of(d)});
  std::stable_sort(fan.entries.begin(), fan.entries.end(), [](const FanEntry& x, const FanEntry& y) {
    return x.degree.degree() < y.degree.degree();
  });
  return fan;
}

}  // namespace detail

/// Angles sorted by degree. Within one 2 beta pi window the raw angles fall
/// strictly as the degree rises: larger degrees sit clockwise.
inline AngleFan departure_fan(const MeromorphicSpec& spec, std::size_t pole_index,
                              std::span<const PhaseTarget> degrees) {
  return detail::make_fan(pole_index, AngleKind::Departure, degrees,
                          [&](const PhaseTarget& d) { return departure_angle(spec, pole_index, d); });
}

inline AngleFan arrival_fan(const MeromorphicSpec& spec, std::size_t zero_index,
                            std::span<const PhaseTarget> degrees) {
  return detail::make_fan(zero_index, AngleKind::Arrival, degrees,
                          [&](const PhaseTarget& d) { return arrival_angle(spec, zero_index, d); });
}

/// True when `gap` is within `tol` of a positive integer multiple of pi.
inline bool is_simple_by_gap(double gap, double tol = 1e-9) {
  if (!(gap > 0.0)) return false;
  const double n = std::round(gap / kPi);
  return n >= 1.0 && std::abs(gap - n * kPi) <= tol;
}

}  // namespace merolocus
