#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "merolocus/angle_math.hpp"
#include "merolocus/error.hpp"
#include "merolocus/function_model.hpp"

namespace merolocus {

inline constexpr double kDefaultPhaseTolerance = 1e-8;

/// A locus degree 2 q pi + alpha together with its unit value a + ib.
class PhaseTarget {
 public:
  PhaseTarget() = default;

  /// Splits an arbitrary degree into its branch index and principal angle.
  static PhaseTarget from_degree(double degree) {
    const double alpha = wrap_pi(degree);
    const auto q = static_cast<long>(std::llround((degree - alpha) / kTwoPi));
    return PhaseTarget(q, alpha);
  }

  PhaseTarget(long q, double alpha) : q_(q), alpha_(wrap_pi(alpha)) {}

  long q() const noexcept { return q_; }
  double alpha() const noexcept { return alpha_; }
  double degree() const noexcept { return kTwoPi * static_cast<double>(q_) + alpha_; }
  Complex unit_value() const noexcept { return {std::cos(alpha_), std::sin(alpha_)}; }

 private:
  long q_ = 0;
  double alpha_ = 0.0;
};

/// K = 1/|W|; 0 at poles and +infinity at zeros.
struct GainValue {
  double k = 0.0;
};

inline GainValue gain_from(const FunctionValue& v) noexcept {
  switch (v.kind) {
    case ValueKind::Pole: return {0.0};
    case ValueKind::Zero: return {std::numeric_limits<double>::infinity()};
    case ValueKind::Regular: break;
  }
  return {std::exp(-v.log_magnitude)};
}

inline GainValue gain(const MeromorphicSpec& spec, ComplexPoint s) {
  return gain_from(evaluate(spec, s));
}

inline double principal_phase(const MeromorphicSpec& spec, ComplexPoint s) {
  const FunctionValue v = evaluate(spec, s);
  if (!v.regular()) throw Error(ErrorCode::NotRegularPoint, "phase is undefined at a zero or pole");
  return v.phase;
}

/// Continuous branch of arg W along a densely sampled path.
inline std::vector<double> unwrap_phase_along(const MeromorphicSpec& spec,
                                              std::span<const ComplexPoint> path) {
  std::vector<double> out;
  out.reserve(path.size());
  double previous_principal = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double principal = principal_phase(spec, path[i]);
    if (i == 0) {
      out.push_back(principal);
    } else {
      const double jump = wrap_pi(principal - previous_principal);
      if (std::abs(jump) >= kPi - 1e-12) {
        throw Error(ErrorCode::UnwrapAliasing,
                    "phase jump of pi between path points " + std::to_string(i - 1) + " and " +
                        std::to_string(i));
      }
      out.push_back(out.back() + jump);
    }
    previous_principal = principal;
  }
  return out;
}

inline double residual_from_phase(double phase, const PhaseTarget& target) noexcept {
  return wrap_pi(phase - target.alpha());
}

inline double phase_residual(const MeromorphicSpec& spec, ComplexPoint s, const PhaseTarget& target) {
  return residual_from_phase(principal_phase(spec, s), target);
}

inline bool satisfies_phase_condition(const MeromorphicSpec& spec, ComplexPoint s,
                                      const PhaseTarget& target,
                                      double tol = kDefaultPhaseTolerance) {
  return std::abs(phase_residual(spec, s, target)) <= tol;
}

}  // namespace merolocus
