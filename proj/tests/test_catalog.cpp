#include <gtest/gtest.h>

#include "merolocus/catalog.hpp"
#include "merolocus/tracer.hpp"

using namespace merolocus;

namespace {

Complex log_value(const FunctionValue& v, double reference_phase) {
  return {v.log_magnitude, nearest_branch(v.phase, reference_phase)};
}

/// Fourth-order central stencil on log f, used as the reference for the
/// second-order-plus-Richardson default.
Complex five_point_log_derivative(const Evaluator& f, ComplexPoint s, double h) {
  const double centre = f(s).phase;
  const Complex p2 = log_value(f(s + 2.0 * h), centre);
  const Complex p1 = log_value(f(s + h), centre);
  const Complex m1 = log_value(f(s - h), centre);
  const Complex m2 = log_value(f(s - 2.0 * h), centre);
  return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
}

}  // namespace

TEST(NamedRational, CatalogDefinitions) {
  const MeromorphicSpec single = named_rational("single_pole");
  EXPECT_NEAR(std::abs(evaluate(single, {0.25, 0.5}).value() - 1.0 / (1.0 - Complex(0.25, 0.5))), 0.0, 1e-15);
  const MeromorphicSpec three = named_rational("three_pole");
  const Complex s{0.3, -0.8};
  EXPECT_NEAR(std::abs(evaluate(three, s).value() - 1.0 / (s * (s + 1.0) * (s + 2.0))), 0.0, 1e-14);
  const MeromorphicSpec pair = named_rational("pole_zero_pair");
  EXPECT_NEAR(std::abs(evaluate(pair, s).value() - (1.0 - s / 2.0) / (1.0 - s)), 0.0, 1e-15);
  const MeromorphicSpec frac = named_rational("fractional_pole");
  EXPECT_EQ(frac.poles[0].exponent, 0.5);
  for (std::string_view name : kNamedRationals) EXPECT_NO_THROW(validate(named_rational(name)));
  try {
    named_rational("four_pole");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFunction);
  }
  EXPECT_TRUE(is_named_rational("two_pole"));
  EXPECT_FALSE(is_named_rational("zeta"));
  EXPECT_TRUE(is_builtin("xi"));
  EXPECT_THROW(as_black_box("beta"), Error);
  EXPECT_THROW(builtin_evaluator("beta"), Error);
}

TEST(BlackBox, ZetaGainAtThePoleIsZero) {
  const BlackBoxFunction z = as_black_box("zeta");
  EXPECT_EQ(gain_from(z.evaluate({1.0, 0.0})).k, 0.0);
  EXPECT_TRUE(std::isinf(gain_from(z.evaluate({0.5, kZetaZeroOrdinates[0]})).k));
  EXPECT_EQ(z.zeros()[0].location, Complex(0.5, kZetaZeroOrdinates[0]));
  EXPECT_THROW(z.evaluate({7.0, 0.0}), Error);
  EXPECT_FALSE(z.in_domain({0.0, 60.0}));
}

TEST(BlackBox, AnchorTablesMatchMeasuredWinding) {
  for (std::string_view id : kBuiltinFunctions) {
    const BlackBoxFunction f = as_black_box(id);
    for (std::size_t i = 0; i < f.zeros().size(); ++i) {
      EXPECT_NEAR(f.measured_winding({AnchorKind::Zero, i}), f.zeros()[i].exponent, 1e-6) << id << " zero " << i;
    }
    for (std::size_t i = 0; i < f.poles().size(); ++i) {
      EXPECT_NEAR(f.measured_winding({AnchorKind::Pole, i}), -f.poles()[i].exponent, 1e-6) << id << " pole " << i;
    }
  }
}

TEST(BlackBox, MeasuredAnglesAgreeWithTheFactoredFormula) {
  // The same rational function seen once through its factors and once only
  // through an evaluator: the two angle routes must agree. Only integer
  // exponents: a sampled circle cannot be unwrapped across a fractional cut.
  for (std::string_view name : {"single_pole", "pole_zero_pair", "two_pole", "three_pole"}) {
    const MeromorphicSpec spec = named_rational(name);
    const FactoredFunction factored(spec);
    const BlackBoxFunction box(std::string(name), [spec](ComplexPoint s) { return evaluate(spec, s); },
                               factored.zeros(), factored.poles(), ValidityRegion{-1e3, 1e3, 1e3});
    for (std::size_t p = 0; p < spec.poles.size(); ++p) {
      for (double d : {0.0, 1.0, kPi, -2.0}) {
        const AnchorRef ref{AnchorKind::Pole, p};
        const double a = factored.anchor_angle_raw(ref, PhaseTarget::from_degree(d));
        const double b = box.anchor_angle_raw(ref, PhaseTarget::from_degree(d));
        // the fitted constant may sit on another branch: compare the directions
        // the two routes put on the locus, i.e. modulo 2 pi / beta
        const double period = kTwoPi / spec.poles[p].exponent;
        const double k = std::round((a - b) / period);
        EXPECT_NEAR(a - b - k * period, 0.0, 1e-6) << name << " pole " << p << " degree " << d;
      }
    }
  }
}

TEST(BlackBox, FiniteDifferenceMatchesHigherOrderStencil) {
  const ComplexPoint points[] = {{0.3, 3.0}, {-2.7, 12.5}, {2.2, -8.0}, {0.5, 21.5}, {-4.1, 0.4}, {4.4, 47.0}};
  for (std::string_view id : kBuiltinFunctions) {
    const BlackBoxFunction f = as_black_box(id);
    const Evaluator eval = builtin_evaluator(id);
    for (ComplexPoint s : points) {
      const Complex reference = five_point_log_derivative(eval, s, 1e-3);
      const Complex got = f.log_derivative(s);
      EXPECT_LE(std::abs(got - reference), 1e-6 * std::max(1.0, std::abs(reference))) << id << " at " << s;
    }
  }
}

TEST(BlackBox, FiniteDifferenceNearAnAnchor) {
  const BlackBoxFunction z = as_black_box("zeta");
  const ComplexPoint s{-2.0 + 1e-5, 0.0};
  // zeta has a simple zero at -2: the log-derivative is dominated by 1/(s + 2)
  EXPECT_NEAR(std::abs(z.log_derivative(s) * (s + 2.0) - 1.0), 0.0, 1e-3);
}

TEST(ZeroTable, ArgumentPrincipleCertifiesTheTable) {
  const Evaluator z = builtin_evaluator("zeta");
  EXPECT_EQ(count_zeros_in_rectangle(z, -0.5, 1.5, 1.0, 50.0), 10);
  EXPECT_EQ(count_zeros_in_rectangle(builtin_evaluator("xi"), -0.5, 1.5, 1.0, 50.0), 10);
  EXPECT_EQ(count_zeros_in_rectangle(z, -4.5, -1.5, -0.5, 0.5), 2);
  EXPECT_EQ(count_zeros_in_rectangle(z, 0.5, 1.5, -0.5, 0.5), -1);
  for (std::size_t k = 0; k < kZetaZeroOrdinates.size(); ++k) {
    const double t = kZetaZeroOrdinates[k];
    double gap = 1.0;
    if (k > 0) gap = std::min(gap, t - kZetaZeroOrdinates[k - 1]);
    if (k + 1 < kZetaZeroOrdinates.size()) gap = std::min(gap, kZetaZeroOrdinates[k + 1] - t);
    const double h = std::min(0.4 * gap, 49.999 - t);
    EXPECT_EQ(count_zeros_in_rectangle(z, 0.3, 0.7, t - h, t + h, 500), 1) << "zero " << k;
  }
}

TEST(ZeroTable, NewtonRefinementReproducesEachOrdinate) {
  const Evaluator z = builtin_evaluator("zeta");
  for (double t : kZetaZeroOrdinates) {
    const ComplexPoint root = refine_zero(z, {0.52, t + 0.02});
    EXPECT_NEAR(root.real(), 0.5, 1e-9) << t;
    EXPECT_NEAR(root.imag(), t, 1e-9) << t;
  }
  EXPECT_NEAR(std::abs(refine_zero(z, {-2.1, 0.05}) - Complex(-2.0, 0.0)), 0.0, 1e-9);
}

TEST(XiRealityCheck, SpecExamples) {
  const std::vector<double> origin{0.0};
  EXPECT_EQ(xi_reality_check(origin), 0.0);
  const std::vector<double> samples{5.0, 10.0, 20.0};
  EXPECT_LE(xi_reality_check(samples), 1e-9);
  const std::vector<double> at_zero{kZetaZeroOrdinates[0]};
  // at a zero only rounding noise is left: the ratio stays finite and bounded
  const double r = xi_reality_check(at_zero);
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_LE(r, 1.0);
  EXPECT_LE(std::abs(xi({0.5, kZetaZeroOrdinates[0]}).value()), 1e-12);
  const std::vector<double> outside{60.0};
  EXPECT_THROW(xi_reality_check(outside), Error);
}

TEST(BlackBoxTrace, ZetaDegreePiRunsFromThePoleToMinusTwo) {
  const BlackBoxFunction z = as_black_box("zeta");
  const LocusCurve c = trace_from_pole(z, 0, PhaseTarget::from_degree(kPi));
  ASSERT_EQ(c.terminus.kind, TerminusKind::Zero);
  EXPECT_EQ(z.zeros()[c.terminus.index].location, Complex(-2.0, 0.0));
  for (const CurvePoint& p : c.points) ASSERT_NEAR(p.s.imag(), 0.0, 1e-8);
  EXPECT_TRUE(verify_curve(z, c, 1e-10).pass);
}

TEST(BlackBoxTrace, ZetaDegreeZeroLeavesTheRegion) {
  const BlackBoxFunction z = as_black_box("zeta");
  const LocusCurve c = trace_from_pole(z, 0, PhaseTarget::from_degree(0.0));
  EXPECT_EQ(c.terminus.kind, TerminusKind::LeftDomain);
  EXPECT_GT(c.points.back().s.real(), 4.9);
}

TEST(BlackBoxTrace, CriticalLineIsCoveredByDegreeZeroAndPiLoci) {
  // Between consecutive zeros xi is real with one sign on sigma = 1/2, so the
  // segment is a degree 0 or pi locus. Trace into each of the first three
  // zeros from below and check the curve never leaves the line.
  const BlackBoxFunction x = as_black_box("xi");
  for (std::size_t k = 0; k < 3; ++k) {
    const double t = kZetaZeroOrdinates[k];
    const double below = k == 0 ? 0.0 : kZetaZeroOrdinates[k - 1];
    const double sign = xi({0.5, 0.5 * (t + below)}).value().real();
    const PhaseTarget degree = PhaseTarget::from_degree(sign > 0.0 ? 0.0 : kPi);
    const double theta = x.anchor_angle_raw({AnchorKind::Zero, k}, degree);
    ASSERT_NEAR(std::sin(theta), -1.0, 1e-6) << "zero " << k;  // the locus lies below the zero
    const LocusCurve c = trace_into_zero(x, k, degree);
    EXPECT_EQ(c.origin.kind, OriginKind::Saddle) << "zero " << k;
    for (const CurvePoint& p : c.points) {
      ASSERT_NEAR(p.s.real(), 0.5, 1e-6) << "zero " << k;
      ASSERT_GE(p.s.imag(), below - 1e-6);
      ASSERT_LE(p.s.imag(), t + 1e-12);
    }
    EXPECT_TRUE(verify_curve(x, c, 1e-10).pass);
  }
}
