#pragma once

// Riemann zeta, Dirichlet eta, gamma and the completed xi function in log
// form. Values are returned as FunctionValue so that large moduli and exact
// zeros/poles need no special casing downstream.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "merolocus/angle_math.hpp"
#include "merolocus/error.hpp"
#include "merolocus/function_model.hpp"

namespace merolocus {

/// Rectangle sigma_min <= Re s <= sigma_max, |Im s| <= t_max.
struct ValidityRegion {
  double sigma_min = -5.0;
  double sigma_max = 5.0;
  double t_max = 50.0;

  bool contains(ComplexPoint s) const noexcept {
    return s.real() >= sigma_min && s.real() <= sigma_max && std::abs(s.imag()) <= t_max;
  }
};

inline constexpr ValidityRegion kZetaRegion{};

namespace detail {

inline void require_region(ComplexPoint s, const ValidityRegion& region, const char* what) {
  if (!region.contains(s) || !std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw Error(ErrorCode::OutOfValidityRegion,
                std::string(what) + " evaluated outside its validity region at (" + std::to_string(s.real()) +
                    ", " + std::to_string(s.imag()) + ")");
  }
}

inline bool is_nonpositive_integer(ComplexPoint s) noexcept {
  return s.imag() == 0.0 && s.real() <= 0.0 && std::nearbyint(s.real()) == s.real();
}

/// On the real axis the phase of a real function is exactly 0 or pi.
inline FunctionValue snap_real(FunctionValue v, ComplexPoint s) noexcept {
  if (v.regular() && s.imag() == 0.0) v.phase = std::cos(v.phase) >= 0.0 ? 0.0 : kPi;
  return v;
}

// B_2k / (2k)!
inline constexpr std::array<double, 14> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
    657931.0 / 186134520519971831808000000.0,
    -3392780147.0 / 37893265687455865519472640000000.0,
};

/// Euler-Maclaurin with N = max(20, 2|t|) terms and 14 Bernoulli corrections.
/// Intended for Re s >= 0, s != 1.
inline Complex zeta_euler_maclaurin(ComplexPoint s) {
  const int n = std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
  Complex sum{0.0, 0.0};
  for (int k = 1; k < n; ++k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  const double ln_n = std::log(static_cast<double>(n));
  const Complex n_pow = std::exp(-s * ln_n);  // N^{-s}
  sum += n_pow * static_cast<double>(n) / (s - 1.0);
  sum += 0.5 * n_pow;
  // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  Complex rising = s;
  Complex power = n_pow / static_cast<double>(n);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    sum += kBernoulliOverFactorial[k] * rising * power;
    const double j = 2.0 * static_cast<double>(k);
    rising *= (s + j + 1.0) * (s + j + 2.0);
    power *= inv_n2;
  }
  return sum;
}

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline Complex log_sin_pi(Complex z) { return std::log(std::sin(kPi * z)); }

/// log Gamma(s) up to a multiple of 2 pi i; s must not be a pole.
inline Complex log_gamma_any_branch(ComplexPoint s) {
  if (s.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(s) - log_gamma_any_branch(1.0 - s);
  }
  const Complex z = s - 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// log zeta(s) for Re s < 0 from the reflection formula.
inline Complex log_zeta_reflected(ComplexPoint s) {
  const Complex mirror = zeta_euler_maclaurin(1.0 - s);
  return s * std::log(2.0) + (s - 1.0) * std::log(kPi) + std::log(std::sin(kPi * s / 2.0)) +
         log_gamma_any_branch(1.0 - s) + std::log(mirror);
}

/// Borwein's accelerated alternating series for eta, Re s >= 0.
inline Complex eta_borwein(ComplexPoint s) {
  const int n = 60 + static_cast<int>(std::ceil(1.5 * std::abs(s.imag())));
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0;  // n (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
  double acc = term;
  d[0] = acc;
  for (int i = 0; i < n; ++i) {
    term *= 4.0 * (n + i) * static_cast<double>(n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
    acc += term;
    d[static_cast<std::size_t>(i) + 1] = acc;
  }
  const double dn = d[static_cast<std::size_t>(n)];
  Complex sum{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double c = (d[static_cast<std::size_t>(k)] - dn) / dn;
    const Complex v = c * std::exp(-s * std::log(static_cast<double>(k + 1)));
    sum += (k % 2 == 0) ? v : -v;
  }
  return -sum;
}

}  // namespace detail

/// Riemann zeta on sigma in [-5, 5], |t| <= 50. s = 1 is reported as a pole,
/// the trivial zeros -2 and -4 as exact zeros.
inline FunctionValue zeta(ComplexPoint s) {
  detail::require_region(s, kZetaRegion, "zeta");
  if (s == Complex{1.0, 0.0}) return FunctionValue::pole();
  if (s.imag() == 0.0 && s.real() < 0.0 && std::nearbyint(s.real() / 2.0) * 2.0 == s.real()) {
    return FunctionValue::zero();
  }
  FunctionValue v = s.real() >= 0.0 ? FunctionValue::from_value(detail::zeta_euler_maclaurin(s))
                                    : FunctionValue::from_log(detail::log_zeta_reflected(s));
  return detail::snap_real(v, s);
}

/// Dirichlet eta on the zeta validity region. Entire; s = 1 gives ln 2.
inline FunctionValue eta(ComplexPoint s) {
  detail::require_region(s, kZetaRegion, "eta");
  if (s.real() >= 0.0) return detail::snap_real(FunctionValue::from_value(detail::eta_borwein(s)), s);
  const FunctionValue z = zeta(s);
  if (!z.regular()) return z;
  const Complex factor = 1.0 - std::exp((1.0 - s) * std::log(2.0));
  FunctionValue v = FunctionValue::from_log(Complex{z.log_magnitude, z.phase} + std::log(factor));
  return detail::snap_real(v, s);
}

/// Gamma via the Lanczos approximation, with reflection for Re s < 0.5.
inline FunctionValue gamma(ComplexPoint s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw Error(ErrorCode::OutOfValidityRegion, "gamma of a non-finite argument");
  }
  if (detail::is_nonpositive_integer(s)) return FunctionValue::pole();
  return detail::snap_real(FunctionValue::from_log(detail::log_gamma_any_branch(s)), s);
}

/// Completed xi(s) = (s - 1) Gamma(1 + s/2) pi^{-s/2} zeta(s), which equals
/// s(s-1)/2 Gamma(s/2) pi^{-s/2} zeta(s). For Re s < 0 the gamma pole and the
/// trivial zero are cancelled analytically through the reflection formula.
inline FunctionValue xi(ComplexPoint s) {
  detail::require_region(s, kZetaRegion, "xi");
  if (s == Complex{1.0, 0.0}) return FunctionValue::from_value({0.5, 0.0});
  Complex log_value;
  if (s.real() >= 0.0) {
    const Complex z = detail::zeta_euler_maclaurin(s);
    const Complex lead = (s - 1.0) * z;
    if (lead == Complex{0.0, 0.0}) return FunctionValue::zero();
    log_value = std::log(lead) + detail::log_gamma_any_branch(1.0 + s / 2.0) - s / 2.0 * std::log(kPi);
  } else {
    // Gamma(1+s/2) zeta(s) = -pi / Gamma(-s/2) * 2^s pi^{s-1} Gamma(1-s) zeta(1-s)
    const Complex mirror = detail::zeta_euler_maclaurin(1.0 - s);
    log_value = std::log(-(s - 1.0) * mirror) + std::log(kPi) - detail::log_gamma_any_branch(-s / 2.0) +
                s * std::log(2.0) + (s - 1.0) * std::log(kPi) + detail::log_gamma_any_branch(1.0 - s) -
                s / 2.0 * std::log(kPi);
  }
  return detail::snap_real(FunctionValue::from_log(log_value), s);
}

}  // namespace merolocus
