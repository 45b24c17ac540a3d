#include <gtest/gtest.h>

#include <random>

#include "merolocus/special_functions.hpp"

using namespace merolocus;

namespace {

// Reference values computed with mpmath at 30 significant digits and frozen.
struct Reference {
  double sigma, t, re, im;
};

constexpr Reference kZeta[] = {
    {2.0, 0.0, 1.6449340668482264, 0.0},
    {0.0, 0.0, -0.5, 0.0},
    {0.5, 14.0, 0.02224114260999359, -0.10325812326645006},
    {-3.5, 7.25, -0.33690365045615617, 2.1315528134909756},
    {4.5, -30.0, 0.982045450898579, 0.0462901484370024},
    {0.25, 49.0, 0.9116177326854338, -0.36558961883754476},
    {-5.0, 50.0, -63501.595911652694, -63233.58698798826},
    {1.5, 0.5, 1.6136857738477235, -0.966099383192756},
    {-2.5, 0.1, 0.008685720679398472, -0.0006184382440037761},
    {0.75, -3.0, 0.5809003960838366, 0.09528120269011739},
};

constexpr Reference kEta[] = {
    {1.0, 0.0, 0.6931471805599453, 0.0},
    {2.0, 0.0, 0.8224670334241132, 0.0},
    {0.0, 0.0, 0.5, 0.0},
    {0.5, 14.0, 0.012220891770754763, -0.2522997666528998},
    {-3.5, 7.25, 47.899115312120756, -5.463278681322641},
    {4.5, -30.0, 1.0175713120029675, -0.033013901258135005},
    {0.25, 49.0, 2.526512354533214, -0.018161164274995954},
    {-5.0, 50.0, -4510740.9524179865, -3684944.3839126965},
    {1.5, 0.5, 0.7725274193841858, 0.06400620371480388},
    {-2.5, 0.1, -0.08886142555884155, 0.013167536052143644},
    {0.75, -3.0, 1.0162861704465995, -0.45289564256189224},
};

constexpr Reference kGamma[] = {
    {0.5, 0.0, 1.772453850905516, 0.0},
    {5.0, 0.0, 24.0, 0.0},
    {-2.5, 3.0, 0.000479788410841897, 0.00029885571114485887},
    {0.1, -7.0, 1.847258471388663e-05, 5.625609535565905e-06},
    {3.3, 20.0, 2.499950772546061e-10, 3.453066590490576e-11},
    {-4.7, 0.2, -0.04132119404071548, 0.002249451899005333},
    {1.25, 25.0, 2.460579758590854e-16, 2.263742417892707e-17},
};

constexpr Reference kXi[] = {
    {0.5, 0.0, 0.4971207781883141, 0.0},
    {0.5, 10.0, 0.037967850310935684, 0.0},
    {0.3, 2.0, 0.4534486188257576, -0.008436738061474977},
    {-3.0, 4.0, 0.36830973088461855, -0.27987508750577916},
    {2.0, -7.0, 0.14082277183994016, -0.08236485155602165},
    {-2.0, 0.0, 0.5739398940467555, 0.0},
    {4.5, 40.0, -5.229228642737282e-10, -3.756196407083149e-10},
    {1.0, 0.0, 0.5, 0.0},
    {0.0, 0.0, 0.5, 0.0},
    {-4.9, -45.0, -8.17630466416429e-11, -1.2205756013352157e-11},
    {0.5, 5.0, 0.2755499973442042, 0.0},
    {0.5, 20.0, -3.665542775560946e-05, 0.0},
};

// Relative accuracy pinned for the evaluators. Absolute 1e-10 is not
// achievable in binary64 where |zeta| reaches 1e5 inside the region.
constexpr double kRelativeTolerance = 1e-10;

template <class Fn, std::size_t N>
void check_table(Fn fn, const Reference (&table)[N], const char* name) {
  for (const Reference& r : table) {
    const Complex expected{r.re, r.im};
    const FunctionValue v = fn(ComplexPoint{r.sigma, r.t});
    ASSERT_TRUE(v.regular()) << name << " at " << r.sigma << "+" << r.t << "i";
    EXPECT_LE(std::abs(v.value() - expected), kRelativeTolerance * std::abs(expected))
        << name << " at " << r.sigma << "+" << r.t << "i";
  }
}

Complex value(const FunctionValue& v) { return v.regular() ? v.value() : Complex{0.0, 0.0}; }

}  // namespace

TEST(Zeta, FrozenReferenceValues) { check_table(zeta, kZeta, "zeta"); }
TEST(Eta, FrozenReferenceValues) { check_table(eta, kEta, "eta"); }
TEST(Gamma, FrozenReferenceValues) { check_table(merolocus::gamma, kGamma, "gamma"); }
TEST(Xi, FrozenReferenceValues) { check_table(xi, kXi, "xi"); }

TEST(Zeta, ClosedFormsAndPole) {
  EXPECT_NEAR(zeta({2.0, 0.0}).value().real(), kPi * kPi / 6, 1e-15);
  EXPECT_NEAR(zeta({4.0, 0.0}).value().real(), std::pow(kPi, 4) / 90, 1e-15);
  EXPECT_NEAR(zeta({-1.0, 0.0}).value().real(), -1.0 / 12, 1e-14);
  EXPECT_EQ(zeta({1.0, 0.0}).kind, ValueKind::Pole);
  EXPECT_EQ(zeta({2.0, 0.0}).phase, 0.0);
  EXPECT_EQ(zeta({0.0, 0.0}).phase, kPi);
  EXPECT_LT(std::abs(value(zeta({-2.0 + 1e-9, 0.0}))), 1e-9);
  EXPECT_LT(std::abs(value(zeta({-4.0 + 1e-9, 0.0}))), 1e-9);
}

TEST(Gamma, PolesAndRecurrence) {
  for (int n = 0; n >= -5; --n) EXPECT_EQ(merolocus::gamma({double(n), 0.0}).kind, ValueKind::Pole) << n;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> sigma(-4.5, 3.5);
  std::uniform_real_distribution<double> t(-20.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const Complex s{sigma(rng), t(rng)};
    const Complex lhs = merolocus::gamma(s + 1.0).value();
    const Complex rhs = s * merolocus::gamma(s).value();
    ASSERT_LE(std::abs(lhs - rhs), 1e-11 * std::abs(lhs)) << s;
  }
}

TEST(Eta, AgreesWithZetaRelation) {
  // the eta evaluator is an accelerated alternating series for sigma >= 0,
  // independent of the zeta evaluator used on the right
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> sigma(-5.0, 5.0);
  std::uniform_real_distribution<double> t(-50.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const Complex s{sigma(rng), t(rng)};
    const Complex lhs = eta(s).value();
    const Complex rhs = (1.0 - std::pow(Complex{2.0, 0.0}, 1.0 - s)) * zeta(s).value();
    ASSERT_LE(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(lhs))) << s;
  }
}

TEST(Xi, ConjugateAndFunctionalSymmetry) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sigma(-4.0, 5.0);
  std::uniform_real_distribution<double> t(-45.0, 45.0);
  for (int i = 0; i < 100; ++i) {
    const Complex s{sigma(rng), t(rng)};
    const Complex x = xi(s).value();
    ASSERT_LE(std::abs(xi(std::conj(s)).value() - std::conj(x)), 1e-10 * std::max(1.0, std::abs(x))) << s;
    ASSERT_LE(std::abs(xi(1.0 - s).value() - x), 1e-9 * std::abs(x)) << s;
  }
}

TEST(Xi, RealOnTheCriticalLine) {
  for (double t : {0.0, 5.0, 10.0, 20.0, 33.3, 48.0}) {
    const Complex x = xi({0.5, t}).value();
    EXPECT_LE(std::abs(x.imag()), 1e-9 * std::abs(x)) << t;
  }
  EXPECT_EQ(xi({0.5, 0.0}).value().imag(), 0.0);
}

TEST(ValidityRegion, OutsidePointsAreRejected) {
  for (ComplexPoint s : {ComplexPoint{5.5, 0.0}, ComplexPoint{-5.5, 0.0}, ComplexPoint{0.5, 50.5}}) {
    for (auto fn : {zeta, eta, xi}) {
      try {
        fn(s);
        FAIL() << s;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfValidityRegion);
      }
    }
  }
  EXPECT_TRUE(kZetaRegion.contains({5.0, -50.0}));
  EXPECT_FALSE(kZetaRegion.contains({5.0, -50.1}));
}
