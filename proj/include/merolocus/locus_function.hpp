#pragma once

// The interface the tracer consumes. Factored specs and black-box special
// functions both model it; branch continuity is expressed through a vector of
// per-factor angles that the tracer carries along each curve.

#include <concepts>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "merolocus/angle_math.hpp"
#include "merolocus/angles.hpp"
#include "merolocus/error.hpp"
#include "merolocus/function_model.hpp"
#include "merolocus/phase_gain.hpp"

namespace merolocus {

struct Anchor {
  ComplexPoint location;
  double exponent = 1.0;
};

enum class AnchorKind { Pole, Zero };

struct AnchorRef {
  AnchorKind kind = AnchorKind::Pole;
  std::size_t index = 0;
};

// clang-format off
template <class F>
concept LocusFunction = requires(const F& f, ComplexPoint s, AnchorRef ref, const PhaseTarget& target,
                                 std::span<const double> args, double theta) {
  { f.evaluate(s) } -> std::same_as<FunctionValue>;
  { f.log_derivative(s) } -> std::convertible_to<Complex>;
  { f.poles() } -> std::convertible_to<std::vector<Anchor>>;
  { f.zeros() } -> std::convertible_to<std::vector<Anchor>>;
  { f.anchor_angle_raw(ref, target) } -> std::convertible_to<double>;
  { f.factor_args(s) } -> std::convertible_to<std::vector<double>>;
  { f.launch_args(ref, theta, s) } -> std::convertible_to<std::vector<double>>;
  { f.assemble_phase(s, args) } -> std::convertible_to<double>;
  { f.in_domain(s) } -> std::convertible_to<bool>;
};
// clang-format on

/// Models that can evaluate the anchor angle formula with the other factors on
/// the branches carried by a curve rather than their principal values.
template <class F>
concept HasBranchAwareAngles = requires(const F& f, AnchorRef ref, const PhaseTarget& target,
                                        std::span<const double> args) {
  { f.anchor_angle_raw(ref, target, args) } -> std::convertible_to<double>;
};

template <class F>
concept HasSecondLogDerivative = requires(const F& f, ComplexPoint s) {
  { f.log_second_derivative(s) } -> std::convertible_to<Complex>;
};

/// Continues per-factor angles to a nearby point, choosing for each factor the
/// branch closest to its previous value.
template <LocusFunction F>
std::vector<double> continue_args(const F& f, ComplexPoint s, std::span<const double> previous) {
  std::vector<double> next = f.factor_args(s);
  for (std::size_t i = 0; i < next.size() && i < previous.size(); ++i) {
    next[i] = nearest_branch(next[i], previous[i]);
  }
  return next;
}

/// Adapter exposing a MeromorphicSpec through the LocusFunction interface.
/// Anchors are the listed zeros/poles, followed by the origin when
/// origin_order is non-zero.
class FactoredFunction {
 public:
  explicit FactoredFunction(MeromorphicSpec spec)
      : spec_(std::make_shared<const MeromorphicSpec>(std::move(spec))),
        factors_(detail::factors(*spec_)) {
    validate(*spec_);
  }

  const MeromorphicSpec& spec() const noexcept { return *spec_; }

  FunctionValue evaluate(ComplexPoint s) const { return merolocus::evaluate(*spec_, s); }
  Complex log_derivative(ComplexPoint s) const { return merolocus::log_derivative(*spec_, s); }
  Complex log_second_derivative(ComplexPoint s) const {
    return merolocus::log_second_derivative(*spec_, s);
  }
  bool in_domain(ComplexPoint) const noexcept { return true; }

  std::vector<Anchor> poles() const {
    std::vector<Anchor> out;
    for (const PoleTerm& p : spec_->poles) out.push_back({p.location, p.exponent});
    if (spec_->origin_order < 0.0) out.push_back({Complex{0.0, 0.0}, -spec_->origin_order});
    return out;
  }

  std::vector<Anchor> zeros() const {
    std::vector<Anchor> out;
    for (const ZeroTerm& z : spec_->zeros) out.push_back({z.location, z.exponent});
    if (spec_->origin_order > 0.0) out.push_back({Complex{0.0, 0.0}, spec_->origin_order});
    return out;
  }

  double anchor_angle_raw(AnchorRef ref, const PhaseTarget& target) const {
    return detail::anchor_angle_raw(*spec_, factors_, factor_of(ref), target);
  }

  /// As above, with every factor other than the anchor's own taken on the
  /// branch given by `args` (continued angles at a point near the anchor).
  double anchor_angle_raw(AnchorRef ref, const PhaseTarget& target, std::span<const double> args) const {
    const std::size_t a = factor_of(ref);
    const Complex at = factors_[a].center;
    double constant = spec_->prefactor.polynomial(at).imag();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      constant += detail::correction_log(f, at).imag();
      if (i == a) {
        constant -= f.weight * f.arg_offset;
      } else {
        constant += f.weight * (nearest_branch(std::arg(at - f.center), args[i]) - f.arg_offset);
      }
    }
    return (target.degree() - constant) / factors_[a].weight;
  }

  std::vector<double> factor_args(ComplexPoint s) const {
    std::vector<double> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(std::arg(s - f.center));
    return out;
  }

  /// Angles at a launch point near an anchor: the anchor's own factor follows
  /// the unnormalized launch direction, the others take the branch the angle
  /// formulas use at the anchor itself.
  std::vector<double> launch_args(AnchorRef ref, double raw_theta, ComplexPoint s) const {
    const std::size_t a = factor_of(ref);
    const Complex at = factors_[a].center;
    std::vector<double> out = factor_args(s);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const double reference = i == a ? raw_theta : std::arg(at - factors_[i].center);
      out[i] = nearest_branch(out[i], reference);
    }
    return out;
  }

  double assemble_phase(ComplexPoint s, std::span<const double> args) const {
    double phase = spec_->prefactor.polynomial(s).imag();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      phase += f.weight * (args[i] - f.arg_offset) + detail::correction_log(f, s).imag();
    }
    return phase;
  }

 private:
  std::size_t factor_of(AnchorRef ref) const {
    const bool pole = ref.kind == AnchorKind::Pole;
    const std::size_t listed = pole ? spec_->poles.size() : spec_->zeros.size();
    if (ref.index < listed) {
      return detail::factor_position(factors_, pole ? FactorRole::Pole : FactorRole::Zero, ref.index);
    }
    const bool origin_matches = pole ? spec_->origin_order < 0.0 : spec_->origin_order > 0.0;
    if (ref.index == listed && origin_matches) {
      return detail::factor_position(factors_, FactorRole::Origin, 0);
    }
    throw Error(ErrorCode::InvalidIndex, "anchor index " + std::to_string(ref.index) + " out of range");
  }

  std::shared_ptr<const MeromorphicSpec> spec_;
  std::vector<detail::Factor> factors_;  // corrections point into *spec_
};

static_assert(LocusFunction<FactoredFunction>);

}  // namespace merolocus
