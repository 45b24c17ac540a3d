#pragma once

// The acceptance suite: ten numbered checks over the catalog, each producing
// a pass/fail verdict and a short measurement summary. Shared by the CLI's
// verify command and the acceptance test binary.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "merolocus/angles.hpp"
#include "merolocus/catalog.hpp"
#include "merolocus/export.hpp"
#include "merolocus/function_model.hpp"
#include "merolocus/locus_function.hpp"
#include "merolocus/phase_gain.hpp"
#include "merolocus/special_functions.hpp"
#include "merolocus/tracer.hpp"

namespace merolocus {

namespace tolerance {
inline constexpr double kPhaseResidual = 1e-8;
inline constexpr double kCurveSeconds = 1.0;
inline constexpr double kLaunchAngle = 1e-3;
inline constexpr double kOppositeGap = 1e-3;
inline constexpr double kFanAffine = 1e-12;
inline constexpr double kStartGain = 1e-4;
inline constexpr double kEndGain = 1e4;
inline constexpr int kOracleResolution = 600;
inline constexpr double kOracleCells = 2.0;
inline constexpr double kSaddleLocation = 1e-4;
inline constexpr double kZetaCapture = 1e-3;
inline constexpr double kZetaSeconds = 30.0;
inline constexpr double kXiReality = 1e-9;
inline constexpr double kXiSymmetry = 1e-9;
inline constexpr double kSpecialValue = 1e-10;
}  // namespace tolerance

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

template <class Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::vector<PhaseTarget> quarter_degrees() {
  return {PhaseTarget(0, 0.0), PhaseTarget(0, kPi / 2), PhaseTarget(0, kPi), PhaseTarget(1, -kPi / 2)};
}

struct NamedSpec {
  std::string name;
  MeromorphicSpec spec;
};

inline std::vector<NamedSpec> rational_catalog() {
  std::vector<NamedSpec> out;
  for (std::string_view n : kNamedRationals) out.push_back({std::string(n), named_rational(n)});
  return out;
}

/// Every curve the rational catalog yields at the four quarter degrees, with
/// saddle continuations.
struct TracedCurve {
  std::string label;
  const FactoredFunction* function;
  LocusCurve curve;
  double seconds;
};

inline std::vector<TracedCurve> trace_rational_catalog(const std::vector<FactoredFunction>& functions,
                                                       const std::vector<NamedSpec>& specs) {
  std::vector<TracedCurve> out;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const FactoredFunction& f = functions[i];
    for (std::size_t p = 0; p < f.poles().size(); ++p) {
      for (const PhaseTarget& d : quarter_degrees()) {
        const std::string label = specs[i].name + " pole " + std::to_string(p) + " degree " +
                                  format_double(d.degree() / kPi) + "pi";
        LocusCurve curve;
        const double secs = timed([&] { curve = trace_from_pole(f, p, d); });
        out.push_back({label, &f, curve, secs});
        if (curve.saddle) {
          std::vector<LocusCurve> branches;
          const double bsecs = timed([&] { branches = continue_through_saddle(f, curve, *curve.saddle); });
          for (std::size_t b = 0; b < branches.size(); ++b) {
            out.push_back({label + " branch " + std::to_string(b), &f, branches[b],
                           bsecs / static_cast<double>(branches.size())});
          }
        }
      }
    }
  }
  return out;
}

inline double secant_angle(const LocusCurve& curve, bool from_front) {
  const auto& pts = curve.points;
  return from_front ? std::arg(pts[1].s - pts[0].s) : std::arg(pts[pts.size() - 2].s - pts.back().s);
}

/// Phase of W continued factor by factor along the circle of radius r about
/// `center` from angle a to angle b (counterclockwise when b > a).
inline double phase_change_on_arc(const FactoredFunction& f, ComplexPoint center, double r, double a, double b) {
  constexpr int kSteps = 2000;
  ComplexPoint s = center + std::polar(r, a);
  std::vector<double> args = f.factor_args(s);
  const double start = f.assemble_phase(s, args);
  for (int j = 1; j <= kSteps; ++j) {
    s = center + std::polar(r, a + (b - a) * j / kSteps);
    args = continue_args(f, s, args);
  }
  return f.assemble_phase(s, args) - start;
}

}  // namespace detail

inline CriterionResult criterion_phase_soundness() {
  CriterionResult r{1, "phase-condition soundness over the rational catalog", true, "", 0.0};
  const auto specs = detail::rational_catalog();
  std::vector<FactoredFunction> fs;
  for (const auto& s : specs) fs.emplace_back(s.spec);
  double worst = 0.0;
  double slowest = 0.0;
  std::size_t points = 0;
  std::vector<detail::TracedCurve> curves;
  r.seconds = detail::timed([&] { curves = detail::trace_rational_catalog(fs, specs); });
  for (const auto& c : curves) {
    const CurveReport rep = verify_curve(*c.function, c.curve, tolerance::kPhaseResidual);
    worst = std::max(worst, rep.max_abs_residual);
    slowest = std::max(slowest, c.seconds);
    points += c.curve.points.size();
    if (!rep.pass) r.pass = false;
  }
  if (slowest > tolerance::kCurveSeconds) r.pass = false;
  r.detail = std::to_string(curves.size()) + " curves, " + std::to_string(points) +
             " points, max |residual| " + detail::sci(worst) + ", every curve within " +
             detail::sci(tolerance::kCurveSeconds) + " s: " + (slowest <= tolerance::kCurveSeconds ? "yes" : "no");
  return r;
}

inline CriterionResult criterion_launch_angles() {
  CriterionResult r{2, "departure/arrival formulas match launch secants", true, "", 0.0};
  double worst = 0.0;
  std::size_t checks = 0;
  r.seconds = detail::timed([&] {
    for (const auto& ns : detail::rational_catalog()) {
      const FactoredFunction f(ns.spec);
      for (std::size_t p = 0; p < ns.spec.poles.size(); ++p) {
        for (const PhaseTarget& d : detail::quarter_degrees()) {
          const double formula = departure_angle(ns.spec, p, d).theta;
          const LocusCurve c = trace_from_pole(f, p, d);
          worst = std::max(worst, angular_distance(formula, detail::secant_angle(c, true)));
          ++checks;
        }
      }
      for (std::size_t z = 0; z < ns.spec.zeros.size(); ++z) {
        for (const PhaseTarget& d : detail::quarter_degrees()) {
          const double formula = arrival_angle(ns.spec, z, d).theta;
          const LocusCurve c = trace_into_zero(f, z, d);
          worst = std::max(worst, angular_distance(formula, detail::secant_angle(c, false)));
          ++checks;
        }
      }
    }
  });
  r.pass = worst <= tolerance::kLaunchAngle;
  r.detail = std::to_string(checks) + " anchor/degree pairs, max angle error " + detail::sci(worst) + " rad";
  return r;
}

/// For each exponent, traces a locus out of (into) the anchor, measures the
/// degree of the opposite launch by continuing the phase of W half way round
/// the launch circle, traces that degree too, and compares the gap with the
/// closed form.
inline CriterionResult criterion_opposite_gaps() {
  CriterionResult r{3, "opposite-direction degree gaps", true, "", 0.0};
  double worst_gap = 0.0;
  double worst_direction = 0.0;
  bool formula_exact = true;
  r.seconds = detail::timed([&] {
    for (double e : {0.5, 1.0, 2.0}) {
      formula_exact = formula_exact && opposite_gap_pole(e) == e * kPi && opposite_gap_zero(e) == e * kPi;
      for (bool pole : {true, false}) {
        MeromorphicSpec spec;
        spec.form = Form::Bode;
        if (pole) {
          spec.poles = {{{1.0, 0.0}, e, std::nullopt}};
          spec.zeros = {{{-3.0, 1.0}, 1.0, std::nullopt}};
        } else {
          spec.zeros = {{{1.0, 0.0}, e, std::nullopt}};
          spec.poles = {{{-3.0, 1.0}, 1.0, std::nullopt}};
        }
        const FactoredFunction f(spec);
        const ComplexPoint anchor{1.0, 0.0};
        const double radius = TraceConfig{}.launch_radius;
        const PhaseTarget d1(0, kPi / 3);
        const LocusCurve c1 = pole ? trace_from_pole(f, 0, d1) : trace_into_zero(f, 0, d1);
        const double theta1 = detail::secant_angle(c1, pole);
        const double turn = detail::phase_change_on_arc(f, anchor, radius, theta1, theta1 + kPi);
        const PhaseTarget d2 = PhaseTarget::from_degree(d1.degree() + turn);
        const LocusCurve c2 = pole ? trace_from_pole(f, 0, d2) : trace_into_zero(f, 0, d2);
        const double theta2 = detail::secant_angle(c2, pole);
        worst_direction = std::max(worst_direction, angular_distance(theta2, theta1 + kPi));
        // half a turn counterclockwise lowers the degree by e*pi at a pole and raises it at a zero
        const double gap = pole ? d1.degree() - d2.degree() : d2.degree() - d1.degree();
        const double expected = pole ? opposite_gap_pole(e) : opposite_gap_zero(e);
        worst_gap = std::max(worst_gap, std::abs(gap - expected));
      }
    }
  });
  r.pass = formula_exact && worst_gap <= tolerance::kOppositeGap && worst_direction <= tolerance::kOppositeGap;
  r.detail = std::string("formula exact: ") + (formula_exact ? "yes" : "no") + ", max gap error " +
             detail::sci(worst_gap) + ", max opposite-direction error " + detail::sci(worst_direction) + " rad";
  return r;
}

inline CriterionResult criterion_fan_monotonicity() {
  CriterionResult r{4, "fan monotonicity and affine law", true, "", 0.0};
  double worst = 0.0;
  bool monotone = true;
  std::size_t fans = 0;
  auto check = [&](const AngleFan& fan, double exponent, bool pole) {
    ++fans;
    for (std::size_t i = 1; i < fan.entries.size(); ++i) {
      const double da = fan.entries[i].angle.raw - fan.entries[0].angle.raw;
      const double dd = fan.entries[i].degree.degree() - fan.entries[0].degree.degree();
      worst = std::max(worst, std::abs(pole ? da * exponent + dd : -da * exponent + dd));
      const double step = fan.entries[i].angle.raw - fan.entries[i - 1].angle.raw;
      if (pole ? !(step < 0.0) : !(step > 0.0)) monotone = false;
    }
  };
  r.seconds = detail::timed([&] {
    auto specs = detail::rational_catalog();
    MeromorphicSpec heavy;
    heavy.form = Form::Bode;
    heavy.zeros = {{{2.0, 1.0}, 0.5, std::nullopt}, {{-1.0, -2.0}, 2.0, std::nullopt}};
    heavy.poles = {{{1.0, 0.0}, 2.0, std::nullopt}, {{0.5, 3.0}, 0.5, std::nullopt}};
    specs.push_back({"mixed", heavy});
    for (const auto& ns : specs) {
      for (std::size_t p = 0; p < ns.spec.poles.size(); ++p) {
        const double b = ns.spec.poles[p].exponent;
        std::vector<PhaseTarget> ds;
        for (int j = 0; j < 16; ++j) ds.push_back(PhaseTarget::from_degree(2.0 * b * kPi * j / 16.0));
        check(departure_fan(ns.spec, p, ds), b, true);
      }
      for (std::size_t z = 0; z < ns.spec.zeros.size(); ++z) {
        const double g = ns.spec.zeros[z].exponent;
        std::vector<PhaseTarget> ds;
        for (int j = 0; j < 16; ++j) ds.push_back(PhaseTarget::from_degree(2.0 * g * kPi * j / 16.0));
        check(arrival_fan(ns.spec, z, ds), g, false);
      }
    }
  });
  r.pass = monotone && worst <= tolerance::kFanAffine;
  r.detail = std::to_string(fans) + " fans of 16 degrees, strictly ordered: " + (monotone ? "yes" : "no") +
             ", max affine residual " + detail::sci(worst);
  return r;
}

inline CriterionResult criterion_gain_endpoints() {
  CriterionResult r{5, "gain endpoints and monotonicity on pole-to-zero curves", true, "", 0.0};
  std::size_t complete = 0;
  double worst_start = 0.0;
  double worst_end = std::numeric_limits<double>::infinity();
  bool monotone = true;
  r.seconds = detail::timed([&] {
    for (const auto& ns : detail::rational_catalog()) {
      if (ns.spec.zeros.empty()) continue;
      const FactoredFunction f(ns.spec);
      for (std::size_t p = 0; p < ns.spec.poles.size(); ++p) {
        for (int j = 0; j < 16; ++j) {
          const LocusCurve c = trace_from_pole(f, p, PhaseTarget::from_degree(kTwoPi * j / 16.0));
          if (c.terminus.kind != TerminusKind::Zero) continue;
          ++complete;
          const CurveReport rep = verify_curve(f, c, tolerance::kPhaseResidual);
          worst_start = std::max(worst_start, rep.start_k);
          worst_end = std::min(worst_end, rep.end_k);
          monotone = monotone && rep.k_monotone;
        }
      }
    }
  });
  r.pass = complete > 0 && worst_start <= tolerance::kStartGain && worst_end >= tolerance::kEndGain && monotone;
  r.detail = std::to_string(complete) + " complete curves, max initial K " + detail::sci(worst_start) +
             ", min final K " + detail::sci(worst_end) + ", K strictly increasing: " + (monotone ? "yes" : "no");
  return r;
}

inline CriterionResult criterion_oracle_equivalence() {
  CriterionResult r{6, "traced locus and grid oracle agree (pole_zero_pair, degree pi)", true, "", 0.0};
  double forward = 0.0;
  double backward = 0.0;
  double cell = 0.0;
  std::size_t oracle_points = 0;
  r.seconds = detail::timed([&] {
    const FactoredFunction f(named_rational("pole_zero_pair"));
    const PhaseTarget d(0, kPi);
    const Window w{0.0, 3.0, -1.0, 1.0};
    const int n = tolerance::kOracleResolution;
    cell = std::max((w.sigma_max - w.sigma_min) / (n - 1), (w.t_max - w.t_min) / (n - 1));
    const auto oracle = grid_scan_oracle(f, w, n, d, kPi / 2, true);
    oracle_points = oracle.size();
    const auto line = polyline_of(trace_from_pole(f, 0, d));
    for (const ComplexPoint& p : oracle) forward = std::max(forward, distance_to_polyline(p, line));
    for (const ComplexPoint& p : line) backward = std::max(backward, distance_to_polyline(p, oracle));
  });
  r.pass = oracle_points > 0 && forward <= tolerance::kOracleCells * cell && backward <= tolerance::kOracleCells * cell;
  r.detail = std::to_string(oracle_points) + " oracle points, oracle-to-curve " + detail::sci(forward / cell) +
             " cells, curve-to-oracle " + detail::sci(backward / cell) + " cells";
  return r;
}

inline CriterionResult criterion_saddle_location() {
  CriterionResult r{7, "three_pole 180-degree locus branches at the saddle", true, "", 0.0};
  const double expected = -1.0 + 1.0 / std::sqrt(3.0);  // root of 3s^2 + 6s + 2 in (-1, 0)
  std::optional<ComplexPoint> found;
  std::size_t branches = 0;
  r.seconds = detail::timed([&] {
    const FactoredFunction f(named_rational("three_pole"));
    const LocusCurve c = trace_from_pole(f, 0, PhaseTarget(0, kPi));
    if (c.terminus.kind == TerminusKind::SaddleStop && c.saddle) {
      found = c.saddle->location;
      branches = continue_through_saddle(f, c, *c.saddle).size();
    }
  });
  const double err = found ? std::abs(*found - ComplexPoint{expected, 0.0}) : std::numeric_limits<double>::infinity();
  r.pass = found && err <= tolerance::kSaddleLocation && branches == 2;
  r.detail = found ? "saddle at " + format_double(found->real()) + (found->imag() < 0 ? " - " : " + ") +
                         format_double(std::abs(found->imag())) + "i, error " + detail::sci(err) + ", " +
                         std::to_string(branches) + " outgoing branches"
                   : std::string("no saddle stop");
  return r;
}

/// Launches from the pole of zeta at s = 1 with the degree that aims the
/// launch at the first nontrivial zero, then widens the search to a sweep of
/// upper-half-plane launch angles (continuing through saddles) in case another
/// degree reaches it.
inline CriterionResult criterion_zeta_trace() {
  CriterionResult r{8, "zeta: trace from the pole at 1 captures 1/2 + 14.1347i", false, "", 0.0};
  const ComplexPoint target{0.5, kZetaZeroOrdinates[0]};
  std::string aimed;
  double best = std::numeric_limits<double>::infinity();
  std::size_t swept = 0;
  std::size_t to_trivial = 0;
  bool captured = false;
  r.seconds = detail::timed([&] {
    const BlackBoxFunction f = as_black_box("zeta");
    const double radius = TraceConfig{}.launch_radius;
    const AnchorRef pole{AnchorKind::Pole, 0};
    auto consider = [&](const LocusCurve& c) {
      for (const CurvePoint& p : c.points) best = std::min(best, std::abs(p.s - target));
      if (c.terminus.kind == TerminusKind::Zero && std::abs(c.points.back().s - target) <= tolerance::kZetaCapture) {
        captured = true;
      }
      if (c.terminus.kind == TerminusKind::Zero && c.points.back().s.imag() == 0.0) ++to_trivial;
    };
    auto trace_with_branches = [&](const PhaseTarget& d) {
      try {
        const LocusCurve c = trace_from_pole(f, 0, d);
        consider(c);
        if (c.saddle) {
          for (const LocusCurve& b : continue_through_saddle(f, c, *c.saddle)) consider(b);
        }
        return c;
      } catch (const Error&) {
        return LocusCurve{};
      }
    };

    const double aim = std::arg(target - ComplexPoint{1.0, 0.0});
    const PhaseTarget d0 = PhaseTarget::from_degree(zeta(ComplexPoint{1.0, 0.0} + std::polar(radius, aim)).phase);
    const LocusCurve c0 = trace_with_branches(d0);
    if (!c0.points.empty()) {
      aimed = "aimed launch (degree " + format_double(d0.degree()) + ") ends " +
              std::string(to_string(c0.terminus.kind)) + " at " + format_double(c0.points.back().s.real()) +
              (c0.points.back().s.imag() < 0 ? " - " : " + ") + format_double(std::abs(c0.points.back().s.imag())) +
              "i";
    }
    constexpr int kSweep = 720;
    const double c = f.anchor_phase_constant(pole);
    for (int j = 1; j < kSweep && !captured; ++j) {
      const double theta = kPi * j / kSweep;
      trace_with_branches(PhaseTarget::from_degree(c - theta));
      ++swept;
    }
  });
  r.pass = captured && r.seconds <= tolerance::kZetaSeconds;
  r.detail = aimed + "; " + std::to_string(swept) + " further launch angles in (0, pi), " +
             std::to_string(to_trivial) + " curves end at trivial zeros, closest approach to the target " +
             detail::sci(best);
  return r;
}

inline CriterionResult criterion_xi_reality(std::uint64_t seed) {
  CriterionResult r{9, "xi real on the critical line and symmetric under s -> 1 - s", true, "", 0.0};
  double reality = 0.0;
  double symmetry = 0.0;
  r.seconds = detail::timed([&] {
    const std::array<double, 4> ts = {0.0, 5.0, 10.0, 20.0};
    reality = xi_reality_check(ts);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> sigma(-4.0, 5.0);
    std::uniform_real_distribution<double> t(-50.0, 50.0);
    for (int i = 0; i < 100; ++i) {
      const ComplexPoint s{sigma(rng), t(rng)};
      const Complex a = xi(s).value();
      const Complex b = xi(1.0 - s).value();
      symmetry = std::max(symmetry, std::abs(a - b) / std::abs(a));
    }
  });
  r.pass = reality <= tolerance::kXiReality && symmetry <= tolerance::kXiSymmetry;
  r.detail = "max relative |Im xi| " + detail::sci(reality) + ", max relative asymmetry " + detail::sci(symmetry);
  return r;
}

inline CriterionResult criterion_special_values() {
  CriterionResult r{10, "special values zeta(2) and eta(1)", true, "", 0.0};
  double ez = 0.0;
  double ee = 0.0;
  r.seconds = detail::timed([&] {
    ez = std::abs(zeta({2.0, 0.0}).value() - Complex{kPi * kPi / 6.0, 0.0});
    ee = std::abs(eta({1.0, 0.0}).value() - Complex{std::log(2.0), 0.0});
  });
  r.pass = ez <= tolerance::kSpecialValue && ee <= tolerance::kSpecialValue;
  r.detail = "|zeta(2) - pi^2/6| " + detail::sci(ez) + ", |eta(1) - ln 2| " + detail::sci(ee);
  return r;
}

inline constexpr std::uint64_t kDefaultSeed = 20240601;

inline constexpr int kCriterionCount = 10;

/// Runs one criterion by number (1-10). Exceptions become a failing result.
inline CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed) {
  const std::array<std::function<CriterionResult()>, kCriterionCount> checks = {
      criterion_phase_soundness,   criterion_launch_angles,  criterion_opposite_gaps, criterion_fan_monotonicity,
      criterion_gain_endpoints,    criterion_oracle_equivalence, criterion_saddle_location, criterion_zeta_trace,
      [seed] { return criterion_xi_reality(seed); }, criterion_special_values,
  };
  if (id < 1 || id > kCriterionCount) {
    throw Error(ErrorCode::InvalidIndex, "no acceptance criterion " + std::to_string(id));
  }
  try {
    return checks[static_cast<std::size_t>(id - 1)]();
  } catch (const std::exception& e) {
    return {id, "check " + std::to_string(id), false, std::string("raised: ") + e.what(), 0.0};
  }
}

/// Runs all ten checks. An exception inside a check fails that check only.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace merolocus
