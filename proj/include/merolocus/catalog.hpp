#pragma once

// Named rational examples and black-box adapters for the built-in special
// functions, plus the argument-principle tools used to certify zero tables.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "merolocus/angle_math.hpp"
#include "merolocus/error.hpp"
#include "merolocus/function_model.hpp"
#include "merolocus/locus_function.hpp"
#include "merolocus/phase_gain.hpp"
#include "merolocus/special_functions.hpp"

namespace merolocus {

/// Imaginary parts of the nontrivial zeta zeros 1/2 + it with 0 < t <= 50.
/// Certified by an argument-principle count and Newton refinement; see
/// count_zeros_in_rectangle / refine_zero and the catalog tests.
inline constexpr std::array<double, 10> kZetaZeroOrdinates = {
    14.134725141734695, 21.022039638771556, 25.01085758014569, 30.424876125859512, 32.93506158773919,
    37.586178158825675, 40.9187190121475,   43.327073280915,   48.00515088116716,  49.7738324776723,
};

using Evaluator = std::function<FunctionValue(ComplexPoint)>;

namespace detail {

/// d/ds log f by central differences with one Richardson step.
inline Complex finite_difference_log_derivative(const Evaluator& f, ComplexPoint s, double h) {
  auto diff = [&](double step) {
    const FunctionValue plus = f(s + step);
    const FunctionValue minus = f(s - step);
    if (!plus.regular() || !minus.regular()) {
      throw Error(ErrorCode::NotRegularPoint, "log-derivative stencil touches a zero or pole");
    }
    const Complex delta{plus.log_magnitude - minus.log_magnitude, wrap_pi(plus.phase - minus.phase)};
    return delta / (2.0 * step);
  };
  const Complex coarse = diff(h);
  const Complex fine = diff(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace detail

/// An analytic function known only through its evaluator, with anchor tables
/// and a rectangle on which the evaluator is trusted.
class BlackBoxFunction {
 public:
  BlackBoxFunction(std::string id, Evaluator evaluator, std::vector<Anchor> zeros, std::vector<Anchor> poles,
                   ValidityRegion region)
      : id_(std::move(id)),
        evaluator_(std::move(evaluator)),
        zeros_(std::move(zeros)),
        poles_(std::move(poles)),
        region_(region) {
    for (const auto* list : {&zeros_, &poles_}) {
      for (const Anchor& a : *list) {
        if (!region_.contains(a.location)) {
          throw Error(ErrorCode::InvalidSpec, id_ + ": anchor outside the validity region");
        }
        if (!(a.exponent > 0.0)) throw Error(ErrorCode::NonPositiveExponent, id_ + ": anchor exponent");
      }
    }
  }

  const std::string& id() const noexcept { return id_; }
  const ValidityRegion& region() const noexcept { return region_; }

  FunctionValue evaluate(ComplexPoint s) const {
    if (!region_.contains(s)) {
      throw Error(ErrorCode::OutOfValidityRegion, id_ + " evaluated outside its validity region");
    }
    for (const Anchor& a : poles_) {
      if (a.location == s) return FunctionValue::pole();
    }
    for (const Anchor& a : zeros_) {
      if (a.location == s) return FunctionValue::zero();
    }
    return evaluator_(s);
  }

  /// The stencil width 1e-6 (1 + |s|) is capped at a quarter of the distance
  /// to the nearest anchor so it never straddles a zero or pole.
  Complex log_derivative(ComplexPoint s) const {
    double h = 1e-6 * (1.0 + std::abs(s));
    for (const auto* list : {&zeros_, &poles_}) {
      for (const Anchor& a : *list) h = std::min(h, 0.25 * std::abs(s - a.location));
    }
    return detail::finite_difference_log_derivative([this](ComplexPoint p) { return evaluate(p); }, s, h);
  }

  bool in_domain(ComplexPoint s) const noexcept { return region_.contains(s); }

  std::vector<Anchor> poles() const { return poles_; }
  std::vector<Anchor> zeros() const { return zeros_; }

  /// Phase constant C with arg f(a + r e^{i theta}) ~ C + w theta near anchor
  /// `ref`, fitted from a sampled circle; w = +gamma (zeros) or -beta (poles).
  /// The branch of C is fixed by the principal phase at theta = 0.
  double anchor_phase_constant(AnchorRef ref) const {
    const Anchor& a = anchor(ref);
    const double w = weight(ref);
    const double r = sample_radius(ref);
    constexpr int kSamples = 64;
    double previous = 0.0;
    double unwrapped = 0.0;
    double sum = 0.0;
    for (int j = 0; j < kSamples; ++j) {
      const double theta = kTwoPi * j / kSamples;
      const FunctionValue v = evaluate(a.location + std::polar(r, theta));
      if (!v.regular()) throw Error(ErrorCode::NotRegularPoint, id_ + ": anchor circle hits a zero or pole");
      unwrapped = j == 0 ? v.phase : unwrapped + wrap_pi(v.phase - previous);
      previous = v.phase;
      sum += unwrapped - w * theta;
    }
    return sum / kSamples;
  }

  /// Total phase winding around an anchor divided by 2 pi; +gamma at a zero
  /// of order gamma, -beta at a pole.
  double measured_winding(AnchorRef ref) const {
    const Anchor& a = anchor(ref);
    const double r = sample_radius(ref);
    constexpr int kSamples = 256;
    double previous = evaluate(a.location + r).phase;
    double total = 0.0;
    for (int j = 1; j <= kSamples; ++j) {
      const FunctionValue v = evaluate(a.location + std::polar(r, kTwoPi * j / kSamples));
      total += wrap_pi(v.phase - previous);
      previous = v.phase;
    }
    return total / kTwoPi;
  }

  double anchor_angle_raw(AnchorRef ref, const PhaseTarget& target) const {
    return (target.degree() - anchor_phase_constant(ref)) / weight(ref);
  }

  std::vector<double> factor_args(ComplexPoint s) const {
    const FunctionValue v = evaluate(s);
    if (!v.regular()) throw Error(ErrorCode::NotRegularPoint, id_ + ": phase undefined at an anchor");
    return {v.phase};
  }

  std::vector<double> launch_args(AnchorRef ref, double raw_theta, ComplexPoint s) const {
    const double expected = anchor_phase_constant(ref) + weight(ref) * raw_theta;
    return {nearest_branch(factor_args(s).front(), expected)};
  }

  double assemble_phase(ComplexPoint, std::span<const double> args) const { return args.front(); }

 private:
  const Anchor& anchor(AnchorRef ref) const {
    const auto& list = ref.kind == AnchorKind::Pole ? poles_ : zeros_;
    if (ref.index >= list.size()) {
      throw Error(ErrorCode::InvalidIndex, id_ + ": anchor index " + std::to_string(ref.index) + " out of range");
    }
    return list[ref.index];
  }

  double weight(AnchorRef ref) const {
    const double e = anchor(ref).exponent;
    return ref.kind == AnchorKind::Pole ? -e : e;
  }

  /// A circle well inside the gap to the nearest other anchor.
  double sample_radius(AnchorRef ref) const {
    const Anchor& a = anchor(ref);
    double gap = 1.0;
    for (const auto* list : {&zeros_, &poles_}) {
      for (const Anchor& o : *list) {
        if (&o != &a) gap = std::min(gap, std::abs(o.location - a.location));
      }
    }
    return 1e-3 * gap;
  }

  std::string id_;
  Evaluator evaluator_;
  std::vector<Anchor> zeros_;
  std::vector<Anchor> poles_;
  ValidityRegion region_;
};

static_assert(LocusFunction<BlackBoxFunction>);

namespace detail {

inline std::vector<Anchor> nontrivial_zeta_zeros() {
  std::vector<Anchor> out;
  for (double t : kZetaZeroOrdinates) {
    out.push_back({{0.5, t}, 1.0});
    out.push_back({{0.5, -t}, 1.0});
  }
  return out;
}

inline std::vector<Anchor> zeta_zeros() {
  std::vector<Anchor> out = nontrivial_zeta_zeros();
  out.insert(out.begin(), {{{-2.0, 0.0}, 1.0}, {{-4.0, 0.0}, 1.0}});
  // first upper-half-plane zero first, so index 0 is 1/2 + 14.13i
  std::stable_partition(out.begin(), out.end(), [](const Anchor& a) { return a.location.imag() > 0.0; });
  return out;
}

}  // namespace detail

inline constexpr std::array<std::string_view, 4> kBuiltinFunctions = {"zeta", "eta", "gamma", "xi"};
inline constexpr std::array<std::string_view, 5> kNamedRationals = {"single_pole", "pole_zero_pair", "two_pole",
                                                                     "three_pole", "fractional_pole"};

/// Tracer-ready adapter for a built-in function. Anchor tables list every zero
/// and pole in the interior of the validity region sigma in [-5, 5], |t| <= 50; for zeta
/// and xi, zero index 0 is the first nontrivial zero 1/2 + 14.1347i.
inline BlackBoxFunction as_black_box(std::string_view id) {
  if (id == "zeta") {
    return {"zeta", zeta, detail::zeta_zeros(), {{{1.0, 0.0}, 1.0}}, kZetaRegion};
  }
  if (id == "eta") {
    auto zeros = detail::zeta_zeros();
    const double step = kTwoPi / std::log(2.0);
    for (int k = 1; k * step <= kZetaRegion.t_max; ++k) {
      zeros.push_back({{1.0, k * step}, 1.0});
      zeros.push_back({{1.0, -k * step}, 1.0});
    }
    return {"eta", eta, std::move(zeros), {}, kZetaRegion};
  }
  if (id == "gamma") {
    std::vector<Anchor> poles;
    for (int n = 0; n > static_cast<int>(kZetaRegion.sigma_min); --n) poles.push_back({{double(n), 0.0}, 1.0});
    return {"gamma", gamma, {}, std::move(poles), kZetaRegion};
  }
  if (id == "xi") {
    auto zeros = detail::nontrivial_zeta_zeros();
    std::stable_partition(zeros.begin(), zeros.end(), [](const Anchor& a) { return a.location.imag() > 0.0; });
    return {"xi", xi, std::move(zeros), {}, kZetaRegion};
  }
  throw Error(ErrorCode::UnknownFunction, "unknown builtin function: " + std::string(id));
}

inline Evaluator builtin_evaluator(std::string_view id) {
  if (id == "zeta") return zeta;
  if (id == "eta") return eta;
  if (id == "gamma") return gamma;
  if (id == "xi") return xi;
  throw Error(ErrorCode::UnknownFunction, "unknown builtin function: " + std::string(id));
}

inline bool is_builtin(std::string_view id) noexcept {
  return std::find(kBuiltinFunctions.begin(), kBuiltinFunctions.end(), id) != kBuiltinFunctions.end();
}

inline bool is_named_rational(std::string_view id) noexcept {
  return std::find(kNamedRationals.begin(), kNamedRationals.end(), id) != kNamedRationals.end();
}

inline MeromorphicSpec named_rational(std::string_view name) {
  MeromorphicSpec spec;
  if (name == "single_pole") {  // 1/(1-s)
    spec.form = Form::Bode;
    spec.poles = {{{1.0, 0.0}, 1.0, std::nullopt}};
  } else if (name == "pole_zero_pair") {  // (1-s/2)/(1-s)
    spec.form = Form::Bode;
    spec.zeros = {{{2.0, 0.0}, 1.0, std::nullopt}};
    spec.poles = {{{1.0, 0.0}, 1.0, std::nullopt}};
  } else if (name == "two_pole") {  // 1/(s(s+1))
    spec.form = Form::Root;
    spec.poles = {{{0.0, 0.0}, 1.0, std::nullopt}, {{-1.0, 0.0}, 1.0, std::nullopt}};
  } else if (name == "three_pole") {  // 1/(s(s+1)(s+2))
    spec.form = Form::Root;
    spec.poles = {{{0.0, 0.0}, 1.0, std::nullopt},
                  {{-1.0, 0.0}, 1.0, std::nullopt},
                  {{-2.0, 0.0}, 1.0, std::nullopt}};
  } else if (name == "fractional_pole") {  // (1-s)^{-1/2}
    spec.form = Form::Bode;
    spec.poles = {{{1.0, 0.0}, 0.5, std::nullopt}};
  } else {
    throw Error(ErrorCode::UnknownFunction, "unknown named example: " + std::string(name));
  }
  return spec;
}

/// Max over samples of |Im xi(1/2 + it)| / max(|xi|, 1e-300).
inline double xi_reality_check(std::span<const double> t_samples) {
  constexpr double kFloor = 1e-300;
  double worst = 0.0;
  for (double t : t_samples) {
    const FunctionValue v = xi({0.5, t});
    if (!v.regular()) continue;  // an exact zero is trivially real
    const Complex value = v.value();
    worst = std::max(worst, std::abs(value.imag()) / std::max(std::abs(value), kFloor));
  }
  return worst;
}

/// Number of zeros minus poles inside the rectangle, from the phase change of
/// f along its boundary sampled with `per_side` points per edge.
inline long count_zeros_in_rectangle(const Evaluator& f, double sigma_min, double sigma_max, double t_min,
                                     double t_max, int per_side = 2000) {
  const std::array<ComplexPoint, 5> corners = {ComplexPoint{sigma_min, t_min}, ComplexPoint{sigma_max, t_min},
                                               ComplexPoint{sigma_max, t_max}, ComplexPoint{sigma_min, t_max},
                                               ComplexPoint{sigma_min, t_min}};
  double total = 0.0;
  double previous = 0.0;
  bool first = true;
  for (std::size_t e = 0; e + 1 < corners.size(); ++e) {
    for (int j = 0; j < per_side; ++j) {
      const ComplexPoint s = corners[e] + (corners[e + 1] - corners[e]) * (static_cast<double>(j) / per_side);
      const FunctionValue v = f(s);
      if (!v.regular()) throw Error(ErrorCode::NotRegularPoint, "zero or pole on the counting contour");
      if (!first) {
        const double jump = wrap_pi(v.phase - previous);
        if (std::abs(jump) > kPi / 2) {
          throw Error(ErrorCode::UnwrapAliasing, "contour sampling too coarse for the argument principle");
        }
        total += jump;
      }
      previous = v.phase;
      first = false;
    }
  }
  const FunctionValue closing = f(corners.front());
  total += wrap_pi(closing.phase - previous);
  return std::lround(total / kTwoPi);
}

/// Newton iteration s <- s - f/f'. The derivative is differenced on f itself
/// because a log-derivative stencil breaks down once it straddles the root.
inline ComplexPoint refine_zero(const Evaluator& f, ComplexPoint guess, int max_iterations = 50) {
  auto value = [&](ComplexPoint s) {
    const FunctionValue v = f(s);
    if (v.kind == ValueKind::Pole) throw Error(ErrorCode::NotRegularPoint, "Newton iteration hit a pole");
    return v.kind == ValueKind::Zero ? Complex{0.0, 0.0} : v.value();
  };
  ComplexPoint s = guess;
  for (int it = 0; it < max_iterations; ++it) {
    const Complex w = value(s);
    if (w == Complex{0.0, 0.0}) return s;
    const double h = 1e-4 * (1.0 + std::abs(s));
    const Complex coarse = (value(s + h) - value(s - h)) / (2.0 * h);
    const Complex fine = (value(s + 0.5 * h) - value(s - 0.5 * h)) / h;
    const Complex step = w / ((4.0 * fine - coarse) / 3.0);
    s -= step;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(s))) break;
  }
  return s;
}

}  // namespace merolocus
