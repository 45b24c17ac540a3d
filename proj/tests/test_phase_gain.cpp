#include <gtest/gtest.h>

#include <random>

#include "merolocus/phase_gain.hpp"

using namespace merolocus;

namespace {

MeromorphicSpec single_pole() {
  MeromorphicSpec s;
  s.poles = {{{1.0, 0.0}, 1.0, std::nullopt}};
  return s;
}

MeromorphicSpec pole_zero_pair() {
  MeromorphicSpec s;
  s.zeros = {{{2.0, 0.0}, 1.0, std::nullopt}};
  s.poles = {{{1.0, 0.0}, 1.0, std::nullopt}};
  return s;
}

}  // namespace

TEST(PhaseTarget, SplitsDegreeIntoBranchAndPrincipalAngle) {
  const PhaseTarget a = PhaseTarget::from_degree(3 * kPi);
  EXPECT_EQ(a.q(), 1);
  EXPECT_NEAR(a.alpha(), kPi, 1e-15);
  const PhaseTarget b = PhaseTarget::from_degree(-kPi / 2);
  EXPECT_EQ(b.q(), 0);
  EXPECT_NEAR(b.degree(), -kPi / 2, 1e-15);
  EXPECT_NEAR(std::abs(b.unit_value() - Complex{0.0, -1.0}), 0.0, 1e-15);
  EXPECT_NEAR(PhaseTarget(2, 0.5).degree(), 4 * kPi + 0.5, 1e-14);
}

TEST(Gain, SpecExamples) {
  EXPECT_DOUBLE_EQ(gain(single_pole(), {0.0, 0.0}).k, 1.0);
  EXPECT_DOUBLE_EQ(gain(single_pole(), {1.0, 0.0}).k, 0.0);
  EXPECT_TRUE(std::isinf(gain(pole_zero_pair(), {2.0, 0.0}).k));
  EXPECT_NEAR(gain(single_pole(), {3.0, 0.0}).k, 2.0, 1e-14);
}

TEST(Gain, ReciprocalOfMagnitudeAtRandomPoints) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  const MeromorphicSpec spec = pole_zero_pair();
  for (int i = 0; i < 1000; ++i) {
    const Complex s{coord(rng), coord(rng)};
    if (!is_regular_point(spec, s)) continue;
    const Complex w = (1.0 - s / 2.0) / (1.0 - s);
    ASSERT_NEAR(gain(spec, s).k * std::abs(w), 1.0, 1e-12);
  }
}

TEST(PhaseResidual, SinglePoleExamples) {
  const MeromorphicSpec spec = single_pole();
  EXPECT_NEAR(phase_residual(spec, {2.0, 0.0}, PhaseTarget::from_degree(kPi)), 0.0, 1e-15);
  EXPECT_TRUE(satisfies_phase_condition(spec, {5.0, 0.0}, PhaseTarget::from_degree(kPi)));
  EXPECT_TRUE(satisfies_phase_condition(spec, {0.5, 0.0}, PhaseTarget::from_degree(0.0)));
  EXPECT_FALSE(satisfies_phase_condition(spec, {1.0, 0.5}, PhaseTarget::from_degree(0.0)));
  EXPECT_NEAR(phase_residual(spec, {1.0, 0.5}, PhaseTarget::from_degree(0.0)), kPi / 2, 1e-15);
  EXPECT_THROW(phase_residual(spec, {1.0, 0.0}, PhaseTarget::from_degree(0.0)), Error);
}

TEST(PhaseResidual, ResidualDependsOnlyOnPrincipalAngle) {
  const MeromorphicSpec spec = pole_zero_pair();
  for (long q = -3; q <= 3; ++q) {
    EXPECT_NEAR(phase_residual(spec, {1.5, 0.0}, PhaseTarget(q, kPi)), 0.0, 1e-15);
  }
}

TEST(UnwrapPhaseAlong, CircleAroundPoleLosesTwoPi) {
  std::vector<ComplexPoint> path;
  for (int i = 0; i <= 400; ++i) path.push_back(Complex{1.0, 0.0} + std::polar(0.5, kTwoPi * i / 400));
  const auto phase = unwrap_phase_along(single_pole(), path);
  EXPECT_NEAR(phase.back() - phase.front(), -kTwoPi, 1e-12);
  for (std::size_t i = 1; i < phase.size(); ++i) ASSERT_LT(std::abs(phase[i] - phase[i - 1]), kPi);
}

TEST(UnwrapPhaseAlong, CircleAroundPoleZeroPairIsZero) {
  std::vector<ComplexPoint> path;
  for (int i = 0; i <= 400; ++i) path.push_back(Complex{1.5, 0.0} + std::polar(2.0, kTwoPi * i / 400));
  const auto phase = unwrap_phase_along(pole_zero_pair(), path);
  EXPECT_NEAR(phase.back() - phase.front(), 0.0, 1e-12);
}

TEST(UnwrapPhaseAlong, CoarsePathAliases) {
  // two samples on opposite sides of the pole: the phase jump is exactly pi
  const std::vector<ComplexPoint> path{{0.0, 0.0}, {2.0, 0.0}};
  try {
    unwrap_phase_along(single_pole(), path);
    FAIL() << "expected UnwrapAliasing";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnwrapAliasing);
  }
}

TEST(UnwrapPhaseAlong, PathThroughPoleIsRejected) {
  const std::vector<ComplexPoint> path{{0.0, 0.0}, {1.0, 0.0}};
  try {
    unwrap_phase_along(single_pole(), path);
    FAIL() << "expected NotRegularPoint";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRegularPoint);
  }
}

TEST(UnwrapPhaseAlong, AgreesWithPrincipalPhaseModuloTwoPi) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  const MeromorphicSpec spec = pole_zero_pair();
  std::vector<ComplexPoint> path{{coord(rng), coord(rng)}};
  for (int i = 0; i < 2000; ++i) {
    Complex next = path.back() + Complex{coord(rng), coord(rng)} * 0.01;
    if (std::abs(next - 1.0) < 0.1 || std::abs(next - 2.0) < 0.1) next = path.back();
    path.push_back(next);
  }
  const auto phase = unwrap_phase_along(spec, path);
  for (std::size_t i = 0; i < path.size(); ++i) {
    ASSERT_NEAR(angular_distance(phase[i], principal_phase(spec, path[i])), 0.0, 1e-12);
  }
}
