#pragma once

// Predictor-corrector continuation of constant-degree loci.
//
// A locus of degree D is a level curve of arg W, which for analytic log W is
// an integral curve of grad log|W|. The predictor steps along the unit
// descent direction -conj(W'/W)/|W'/W| (ascent for reverse traces), and a
// scalar Newton iteration along i * tangent pulls the point back onto the
// level set. Branch continuity of multivalued factors is carried in the
// per-factor angle vector supplied by the LocusFunction model.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "merolocus/angle_math.hpp"
#include "merolocus/error.hpp"
#include "merolocus/locus_function.hpp"
#include "merolocus/phase_gain.hpp"

namespace merolocus {

struct TraceConfig {
  double launch_radius = 1e-4;
  double step_init = 1e-3;
  double step_min = 1e-9;
  double step_max = 0.1;
  double corrector_tol = 1e-10;
  double capture_radius = 1e-6;
  double escape_radius = 1e3;
  double saddle_threshold = 1e-8;
  std::size_t max_points = 100000;
  double arrival_tolerance = 0.2;  // rad, approach direction vs. arrival angle
  int max_corrector_iterations = 8;

  void validate() const {
    const bool steps_ok = 0.0 < step_min && step_min <= step_init && step_init <= step_max;
    const bool radii_ok = launch_radius > 0.0 && capture_radius > 0.0 && escape_radius > 0.0;
    if (!steps_ok || !radii_ok || !(corrector_tol > 0.0) || max_points < 2 ||
        max_corrector_iterations < 1) {
      throw Error(ErrorCode::InvalidSpec, "inconsistent trace configuration");
    }
  }
};

struct CurvePoint {
  ComplexPoint s;
  double k = 0.0;
  double residual = 0.0;
};

enum class OriginKind { Pole, EntryAtInfinity, Saddle, Unresolved };
enum class TerminusKind { Zero, ExitToInfinity, SaddleStop, StepLimit, LeftDomain };

inline std::string_view to_string(OriginKind kind) noexcept {
  switch (kind) {
    case OriginKind::Pole: return "PoleIndex";
    case OriginKind::EntryAtInfinity: return "EntryAtInfinity";
    case OriginKind::Saddle: return "Saddle";
    case OriginKind::Unresolved: return "Unresolved";
  }
  return "?";
}

inline std::string_view to_string(TerminusKind kind) noexcept {
  switch (kind) {
    case TerminusKind::Zero: return "ZeroIndex";
    case TerminusKind::ExitToInfinity: return "ExitToInfinity";
    case TerminusKind::SaddleStop: return "SaddleStop";
    case TerminusKind::StepLimit: return "StepLimit";
    case TerminusKind::LeftDomain: return "LeftDomain";
  }
  return "?";
}

struct CurveOrigin {
  OriginKind kind = OriginKind::Pole;
  std::size_t index = 0;  // pole index when kind == Pole
};

struct CurveTerminus {
  TerminusKind kind = TerminusKind::StepLimit;
  std::size_t index = 0;  // zero index when kind == Zero
};

/// A root of W' met on a locus, with the directions in which the same-degree
/// locus leaves it.
struct SaddleEvent {
  ComplexPoint location;
  double incoming_direction = 0.0;
  std::vector<double> outgoing_directions;
  std::vector<double> args;  // continued per-factor angles at the saddle
};

struct LocusCurve {
  PhaseTarget degree;
  std::vector<CurvePoint> points;
  CurveOrigin origin;
  CurveTerminus terminus;
  std::optional<SaddleEvent> saddle;
  std::vector<double> start_args;  // continued angles at the first regular point
};

namespace detail {

inline bool is_anchor_point(const CurvePoint& p) noexcept {
  return p.k == 0.0 || std::isinf(p.k);
}

template <LocusFunction F>
Complex second_log_derivative(const F& f, ComplexPoint s) {
  if constexpr (HasSecondLogDerivative<F>) {
    return f.log_second_derivative(s);
  } else {
    const double h = 1e-4 * (1.0 + std::abs(s));
    return (f.log_derivative(s + h) - f.log_derivative(s - h)) / (2.0 * h);
  }
}

/// One continuation run. `sign` is -1 for descent of |W| (pole towards zero)
/// and +1 for ascent (reverse traces out of a zero).
template <LocusFunction F>
class ContinuationRun {
 public:
  ContinuationRun(const F& f, const PhaseTarget& target, const TraceConfig& config, double sign)
      : f_(f), target_(target), config_(config), sign_(sign), poles_(f.poles()), zeros_(f.zeros()) {}

  struct Corrected {
    ComplexPoint s;
    std::vector<double> args;
    double residual;
    int iterations;
  };

  double residual_at(ComplexPoint s, std::span<const double> args) const {
    return residual_from_phase(f_.assemble_phase(s, args), target_);
  }

  /// Newton along the unit direction `normal` from `start`, continuing angles
  /// from `reference_args`.
  std::optional<Corrected> correct(ComplexPoint start, Complex normal,
                                   std::span<const double> reference_args, double max_move) const {
    ComplexPoint s = start;
    for (int it = 0; it <= config_.max_corrector_iterations; ++it) {
      if (!f_.in_domain(s)) return std::nullopt;
      std::vector<double> args = continue_args(f_, s, reference_args);
      const double res = residual_at(s, args);
      if (std::abs(res) <= config_.corrector_tol) return Corrected{s, std::move(args), res, it};
      if (it == config_.max_corrector_iterations) break;
      const Complex l = f_.log_derivative(s);
      const double slope = (l * normal).imag();
      if (!(std::abs(slope) > 0.0) || !std::isfinite(slope)) return std::nullopt;
      const double delta = -res / slope;
      if (std::abs(delta) > max_move) return std::nullopt;
      s += delta * normal;
    }
    return std::nullopt;
  }

  double local_scale(ComplexPoint s) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Anchor& a : poles_) d = std::min(d, std::abs(s - a.location));
    for (const Anchor& a : zeros_) d = std::min(d, std::abs(s - a.location));
    return std::isfinite(d) ? d : 1.0;
  }

  Complex direction(Complex log_deriv) const { return sign_ * std::conj(log_deriv) / std::abs(log_deriv); }

  const std::vector<Anchor>& targets() const { return sign_ < 0.0 ? zeros_ : poles_; }

  /// True when the approach direction into anchor `i` matches one branch of
  /// its closed-form (or numerical) angle for this degree.
  bool consistent_approach(std::size_t i, ComplexPoint s, std::span<const double> args) const {
    const AnchorRef ref{sign_ < 0.0 ? AnchorKind::Zero : AnchorKind::Pole, i};
    const Anchor& a = targets()[i];
    const double measured = std::arg(s - a.location);
    const int branches = static_cast<int>(std::ceil(a.exponent)) + 1;
    for (int m = -branches; m <= branches; ++m) {
      const PhaseTarget shifted(target_.q() + m, target_.alpha());
      double raw = 0.0;
      try {
        if constexpr (HasBranchAwareAngles<F>) raw = f_.anchor_angle_raw(ref, shifted, args);
        else raw = f_.anchor_angle_raw(ref, shifted);
      } catch (const Error&) {
        return true;  // no formula available; distance alone decides
      }
      if (angular_distance(measured, raw) <= config_.arrival_tolerance) return true;
    }
    return false;
  }

  /// Locates a root of W'/W near `guess` by Newton's method.
  std::optional<ComplexPoint> find_saddle(ComplexPoint guess, double radius) const {
    ComplexPoint s = guess;
    for (int it = 0; it < 50; ++it) {
      const Complex l = f_.log_derivative(s);
      const Complex l2 = second_log_derivative(f_, s);
      if (std::abs(l2) == 0.0) return std::nullopt;
      const Complex step = l / l2;
      s -= step;
      if (std::abs(s - guess) > radius || !f_.in_domain(s)) return std::nullopt;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(s))) break;
    }
    const double scale = local_scale(s);
    if (std::abs(f_.log_derivative(s)) * scale > std::max(config_.saddle_threshold, 1e-6)) {
      return std::nullopt;
    }
    return s;
  }

  /// Directions at which the same-degree locus leaves a saddle moving in this
  /// run's sense (descending for sign < 0).
  std::vector<double> outgoing_directions(ComplexPoint center, std::span<const double> args,
                                          double incoming_reverse) const {
    const double radius = 10.0 * config_.launch_radius;
    const FunctionValue center_value = f_.evaluate(center);
    constexpr int kSamples = 1440;
    auto sample = [&](double theta) {
      const ComplexPoint p = center + std::polar(radius, theta);
      return residual_at(p, continue_args(f_, p, args));
    };
    std::vector<double> out;
    double prev_theta = 0.0;
    double prev = sample(prev_theta);
    for (int j = 1; j <= kSamples; ++j) {
      const double theta = kTwoPi * j / kSamples;
      const double cur = sample(theta);
      if ((prev < 0.0) != (cur < 0.0) && std::abs(prev) < kPi / 2 && std::abs(cur) < kPi / 2) {
        double lo = prev_theta;
        double hi = theta;
        double flo = prev;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = sample(mid);
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double root = normalize_2pi(0.5 * (lo + hi));
        const FunctionValue v = f_.evaluate(center + std::polar(radius, root));
        const bool moves_our_way = sign_ < 0.0 ? v.log_magnitude < center_value.log_magnitude
                                               : v.log_magnitude > center_value.log_magnitude;
        if (moves_our_way && angular_distance(root, incoming_reverse) > config_.arrival_tolerance) {
          out.push_back(root);
        }
      }
      prev = cur;
      prev_theta = theta;
    }
    return out;
  }

  CurvePoint make_point(ComplexPoint s, double residual) const {
    return {s, gain_from(f_.evaluate(s)).k, residual};
  }

  /// Runs the predictor-corrector loop from an already corrected point.
  void run(LocusCurve& curve, ComplexPoint s, std::vector<double> args) const {
    double h = config_.step_init;
    double log_mag = f_.evaluate(s).log_magnitude;
    std::optional<Complex> previous_tangent;

    while (true) {
      if (curve.points.size() >= config_.max_points) {
        curve.terminus = {TerminusKind::StepLimit, 0};
        return;
      }
      const Complex l = f_.log_derivative(s);
      if (!(std::abs(l) * local_scale(s) > config_.saddle_threshold)) {
        stop_at_saddle(curve, s, args, previous_tangent);
        return;
      }
      const Complex d = direction(l);

      // shorten the step so an anchor straight ahead is landed on, not jumped
      double step = std::min(h, config_.step_max);
      bool aiming = false;
      for (const Anchor& a : targets()) {
        const Complex to = a.location - s;
        const double dist = std::abs(to);
        if (dist <= step + config_.capture_radius && (to * std::conj(d)).real() > 0.9 * dist) {
          step = std::min(step, std::max(dist - 0.5 * config_.capture_radius, config_.step_min));
          aiming = true;
        }
      }

      const ComplexPoint predicted = s + step * d;
      if (!f_.in_domain(predicted)) {
        curve.terminus = {TerminusKind::LeftDomain, 0};
        return;
      }
      const Complex normal = Complex{0.0, 1.0} * d;
      auto next = correct(predicted, normal, args, std::max(step, config_.capture_radius));

      bool reversed = false;
      bool monotone = false;
      if (next) {
        const FunctionValue v = f_.evaluate(next->s);
        monotone = v.regular() && (sign_ < 0.0 ? v.log_magnitude < log_mag : v.log_magnitude > log_mag);
        if (v.regular()) {
          const Complex d_next = direction(f_.log_derivative(next->s));
          reversed = (d_next * std::conj(d)).real() < 0.0;
        }
      }

      if (!next || !monotone || reversed) {
        if (next && (reversed || !monotone)) {
          if (auto saddle = find_saddle(0.5 * (s + next->s), 4.0 * step)) {
            const auto saddle_args = continue_args(f_, *saddle, args);
            if (std::abs(residual_at(*saddle, saddle_args)) <= 1e-6 && *saddle != s) {
              const Complex incoming = *saddle - s;
              stop_at_saddle(curve, *saddle, saddle_args, incoming / std::abs(incoming));
              return;
            }
          }
        }
        h = 0.5 * step;
        if (h < config_.step_min) {
          throw Error(ErrorCode::CorrectorDivergence,
                      "corrector failed at s = (" + std::to_string(s.real()) + ", " +
                          std::to_string(s.imag()) + ") with the minimum step");
        }
        continue;
      }

      s = next->s;
      args = std::move(next->args);
      log_mag = f_.evaluate(s).log_magnitude;
      curve.points.push_back(make_point(s, next->residual));
      previous_tangent = d;

      if (next->iterations <= 2 && !aiming) h = std::min(2.0 * step, config_.step_max);
      else if (next->iterations >= 5) h = std::max(0.5 * step, config_.step_min);
      else h = step;

      if (std::abs(s) > config_.escape_radius) {
        curve.terminus = {TerminusKind::ExitToInfinity, 0};
        return;
      }
      const auto& anchors = targets();
      for (std::size_t i = 0; i < anchors.size(); ++i) {
        if (std::abs(s - anchors[i].location) <= config_.capture_radius && consistent_approach(i, s, args)) {
          const double k_end = sign_ < 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
          curve.points.push_back({anchors[i].location, k_end, 0.0});
          // for reverse runs the captured anchor is a pole; trace_into_zero relabels it
          curve.terminus = {TerminusKind::Zero, i};
          return;
        }
      }
    }
  }

  void stop_at_saddle(LocusCurve& curve, ComplexPoint at, std::span<const double> args,
                      std::optional<Complex> incoming) const {
    SaddleEvent event;
    event.location = at;
    event.args.assign(args.begin(), args.end());
    const double incoming_dir = incoming ? std::arg(*incoming) : 0.0;
    event.incoming_direction = incoming_dir;
    event.outgoing_directions = outgoing_directions(at, args, normalize_2pi(incoming_dir + kPi));
    if (curve.points.empty() || curve.points.back().s != at) {
      curve.points.push_back(make_point(at, residual_at(at, args)));
    }
    curve.terminus = {TerminusKind::SaddleStop, 0};
    curve.saddle = std::move(event);
  }

 private:
  const F& f_;
  PhaseTarget target_;
  TraceConfig config_;
  double sign_;
  std::vector<Anchor> poles_;
  std::vector<Anchor> zeros_;
};

/// Launches from an anchor along the given unnormalized angle and corrects
/// the launch point tangentially onto the locus.
template <LocusFunction F>
LocusCurve trace_from_anchor(const F& f, AnchorRef ref, const PhaseTarget& target,
                             const TraceConfig& config) {
  config.validate();
  const double sign = ref.kind == AnchorKind::Pole ? -1.0 : 1.0;
  const auto anchors = ref.kind == AnchorKind::Pole ? f.poles() : f.zeros();
  if (ref.index >= anchors.size()) {
    throw Error(ErrorCode::InvalidIndex, "anchor index " + std::to_string(ref.index) + " out of range");
  }
  const Anchor& anchor = anchors[ref.index];
  for (const auto& other : ref.kind == AnchorKind::Pole ? f.zeros() : f.poles()) {
    if (other.location == anchor.location) {
      throw Error(ErrorCode::DegenerateGeometry, "a zero and a pole share the launch anchor");
    }
  }

  const double raw = f.anchor_angle_raw(ref, target);
  const Complex radial = std::polar(1.0, raw);
  const ComplexPoint launch = anchor.location + config.launch_radius * radial;
  const auto launch_args = f.launch_args(ref, raw, launch);

  ContinuationRun<F> run(f, target, config, sign);
  const Complex tangential = Complex{0.0, 1.0} * radial;
  auto first = run.correct(launch, tangential, launch_args, config.launch_radius);
  if (!first) {
    throw Error(ErrorCode::CorrectorDivergence, "could not place the launch point on the locus");
  }

  LocusCurve curve;
  curve.degree = target;
  curve.start_args = first->args;
  curve.points.push_back({anchor.location, sign < 0.0 ? 0.0 : std::numeric_limits<double>::infinity(), 0.0});
  curve.points.push_back(run.make_point(first->s, first->residual));
  if (sign < 0.0) curve.origin = {OriginKind::Pole, ref.index};
  else curve.terminus = {TerminusKind::Zero, ref.index};

  run.run(curve, first->s, first->args);
  return curve;
}

}  // namespace detail

/// Traces the locus of the given degree that leaves pole `pole_index`. The
/// first point is the pole itself (K = 0); a captured zero is appended as the
/// last point (K = +inf).
template <LocusFunction F>
LocusCurve trace_from_pole(const F& f, std::size_t pole_index, const PhaseTarget& target,
                           const TraceConfig& config = {}) {
  return detail::trace_from_anchor(f, AnchorRef{AnchorKind::Pole, pole_index}, target, config);
}

/// Traces backwards (ascending |W|) from zero `zero_index` and returns the
/// curve in pole-to-zero order. Loci that do not come from a finite pole are
/// reported with origin EntryAtInfinity.
template <LocusFunction F>
LocusCurve trace_into_zero(const F& f, std::size_t zero_index, const PhaseTarget& target,
                           const TraceConfig& config = {}) {
  LocusCurve reversed = detail::trace_from_anchor(f, AnchorRef{AnchorKind::Zero, zero_index}, target, config);
  LocusCurve curve = reversed;
  std::reverse(curve.points.begin(), curve.points.end());
  curve.terminus = {TerminusKind::Zero, zero_index};
  switch (reversed.terminus.kind) {
    case TerminusKind::Zero:  // the reverse run captured a pole
      curve.origin = {OriginKind::Pole, reversed.terminus.index};
      break;
    case TerminusKind::ExitToInfinity:
    case TerminusKind::LeftDomain:
      curve.origin = {OriginKind::EntryAtInfinity, 0};
      break;
    case TerminusKind::SaddleStop:
      curve.origin = {OriginKind::Saddle, 0};
      break;
    case TerminusKind::StepLimit:
      curve.origin = {OriginKind::Unresolved, 0};
      break;
  }
  curve.start_args.clear();  // the stored angles belong to the far end now
  return curve;
}

struct FanTraceResult {
  std::optional<LocusCurve> curve;
  std::optional<Error> error;
};

/// One trace per degree, run concurrently; results keep the input order and a
/// failure on one curve does not affect its siblings.
template <LocusFunction F>
std::vector<FanTraceResult> trace_fan(const F& f, std::size_t pole_index,
                                      std::span<const PhaseTarget> degrees,
                                      const TraceConfig& config = {}) {
  std::vector<std::future<FanTraceResult>> jobs;
  jobs.reserve(degrees.size());
  for (const PhaseTarget& d : degrees) {
    jobs.push_back(std::async(std::launch::async, [&f, pole_index, d, config]() -> FanTraceResult {
      try {
        return {trace_from_pole(f, pole_index, d, config), std::nullopt};
      } catch (const Error& e) {
        return {std::nullopt, e};
      }
    }));
  }
  std::vector<FanTraceResult> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

/// Restarts the trace along every outgoing direction of a saddle, keeping the
/// degree. Each continuation starts at the saddle point itself.
template <LocusFunction F>
std::vector<LocusCurve> continue_through_saddle(const F& f, const LocusCurve& curve,
                                                const SaddleEvent& event,
                                                const TraceConfig& config = {}) {
  config.validate();
  std::vector<LocusCurve> out;
  const double radius = 10.0 * config.launch_radius;
  detail::ContinuationRun<F> run(f, curve.degree, config, -1.0);
  for (double phi : event.outgoing_directions) {
    const Complex radial = std::polar(1.0, phi);
    const ComplexPoint launch = event.location + radius * radial;
    auto first = run.correct(launch, Complex{0.0, 1.0} * radial, event.args, radius);
    if (!first) {
      throw Error(ErrorCode::CorrectorDivergence, "could not leave the saddle along a branch");
    }
    LocusCurve branch;
    branch.degree = curve.degree;
    branch.origin = {OriginKind::Saddle, 0};
    branch.start_args = first->args;
    branch.points.push_back(run.make_point(event.location, run.residual_at(event.location, event.args)));
    branch.points.push_back(run.make_point(first->s, first->residual));
    run.run(branch, first->s, first->args);
    out.push_back(std::move(branch));
  }
  return out;
}

struct CurveReport {
  double max_abs_residual = 0.0;
  bool k_monotone = true;
  double start_k = 0.0;
  double end_k = 0.0;
  std::optional<double> initial_direction;  // arg of the first secant
  std::optional<double> final_direction;    // arg of (last - second to last)
  bool pass = true;
};

/// Recomputes the phase residual at every regular point independently of the
/// stored values, walking the branch continuously from the first point.
template <LocusFunction F>
CurveReport verify_curve(const F& f, const LocusCurve& curve, double tol) {
  if (curve.points.empty()) throw Error(ErrorCode::EmptyInput, "cannot verify an empty curve");
  CurveReport report;
  report.start_k = curve.points.front().k;
  report.end_k = curve.points.back().k;
  std::vector<double> args;
  bool first = true;
  for (const CurvePoint& p : curve.points) {
    if (detail::is_anchor_point(p)) continue;
    if (first) {
      args = curve.start_args.empty() ? f.factor_args(p.s) : continue_args(f, p.s, curve.start_args);
      first = false;
    } else {
      args = continue_args(f, p.s, args);
    }
    const double res = residual_from_phase(f.assemble_phase(p.s, args), curve.degree);
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(res));
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (!(curve.points[i].k > curve.points[i - 1].k)) report.k_monotone = false;
  }
  const auto& pts = curve.points;
  if (pts.size() >= 2) {
    report.initial_direction = std::arg(pts[1].s - pts[0].s);
    report.final_direction = std::arg(pts[pts.size() - 1].s - pts[pts.size() - 2].s);
  }
  report.pass = report.max_abs_residual <= tol;
  return report;
}

struct Window {
  double sigma_min = 0.0;
  double sigma_max = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;
};

/// Brute-force membership test on a resolution x resolution grid: regular
/// points whose principal phase residual is below `delta`. With
/// `crossings_only`, a point must also differ in residual sign from a grid
/// neighbour that is itself below `delta` (the level curve passes between).
template <LocusFunction F>
std::vector<ComplexPoint> grid_scan_oracle(const F& f, const Window& window, int resolution,
                                           const PhaseTarget& target, double delta,
                                           bool crossings_only = false) {
  if (resolution < 2 || !(delta > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "grid scan needs resolution >= 2 and delta > 0");
  }
  const std::size_t n = static_cast<std::size_t>(resolution);
  const double hs = (window.sigma_max - window.sigma_min) / (resolution - 1);
  const double ht = (window.t_max - window.t_min) / (resolution - 1);
  auto point = [&](std::size_t i, std::size_t j) {
    return ComplexPoint{window.sigma_min + hs * static_cast<double>(i), window.t_min + ht * static_cast<double>(j)};
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> res(n * n, nan);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const ComplexPoint s = point(i, j);
      if (!f.in_domain(s)) continue;
      const FunctionValue v = f.evaluate(s);
      if (v.regular()) res[j * n + i] = residual_from_phase(v.phase, target);
    }
  }
  std::vector<ComplexPoint> out;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double r = res[j * n + i];
      if (std::isnan(r) || !(std::abs(r) < delta)) continue;
      if (crossings_only) {
        bool crossing = false;
        auto check = [&](std::size_t ii, std::size_t jj) {
          const double o = res[jj * n + ii];
          if (!std::isnan(o) && std::abs(o) < delta && ((o < 0.0) != (r < 0.0))) crossing = true;
        };
        if (i > 0) check(i - 1, j);
        if (i + 1 < n) check(i + 1, j);
        if (j > 0) check(i, j - 1);
        if (j + 1 < n) check(i, j + 1);
        if (!crossing) continue;
      }
      out.push_back(point(i, j));
    }
  }
  return out;
}

/// Euclidean distance from a point to a polyline.
inline double distance_to_polyline(ComplexPoint p, std::span<const ComplexPoint> line) {
  if (line.empty()) return std::numeric_limits<double>::infinity();
  double best = std::abs(p - line.front());
  for (std::size_t i = 1; i < line.size(); ++i) {
    const Complex a = line[i - 1];
    const Complex ab = line[i] - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(p - (a + t * ab)));
  }
  return best;
}

inline std::vector<ComplexPoint> polyline_of(const LocusCurve& curve) {
  std::vector<ComplexPoint> out;
  out.reserve(curve.points.size());
  for (const CurvePoint& p : curve.points) out.push_back(p.s);
  return out;
}

/// Symmetric Hausdorff distance between two polylines.
inline double hausdorff_distance(std::span<const ComplexPoint> a, std::span<const ComplexPoint> b) {
  double d = 0.0;
  for (const ComplexPoint& p : a) d = std::max(d, distance_to_polyline(p, b));
  for (const ComplexPoint& p : b) d = std::max(d, distance_to_polyline(p, a));
  return d;
}

}  // namespace merolocus
