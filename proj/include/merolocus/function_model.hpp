#pragma once

// Factored meromorphic functions
//
//   W(s) = s^k G(s) prod_l (1 - s/z_l)^{gamma_l} G_lz(s) / prod_j (1 - s/p_j)^{beta_j} G_jp(s)
//
// in Bode form, or with (s - z)^gamma factors in root form. Values are carried
// in log-polar form so evaluation never overflows near a pole.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "merolocus/angle_math.hpp"
#include "merolocus/error.hpp"

namespace merolocus {

inline constexpr double kDefaultSnapRadius = 1e-12;

/// exp(c_0 + c_1 s + ... + c_D s^D), optionally with the exponential part of a
/// Weierstrass elementary factor of the given order attached to a term.
struct EntireFactor {
  std::vector<Complex> exponent_polynomial;
  std::optional<unsigned> weierstrass_order;

  bool empty() const noexcept {
    return exponent_polynomial.empty() && !weierstrass_order.has_value();
  }

  Complex polynomial(Complex s) const noexcept {
    Complex acc{0.0, 0.0};
    for (auto it = exponent_polynomial.rbegin(); it != exponent_polynomial.rend(); ++it) {
      acc = acc * s + *it;
    }
    return acc;
  }

  Complex polynomial_derivative(Complex s) const noexcept {
    Complex acc{0.0, 0.0};
    const std::size_t n = exponent_polynomial.size();
    for (std::size_t i = n; i-- > 1;) {
      acc = acc * s + static_cast<double>(i) * exponent_polynomial[i];
    }
    return acc;
  }
};

struct ZeroTerm {
  ComplexPoint location;
  double exponent = 1.0;
  std::optional<EntireFactor> correction;
};

struct PoleTerm {
  ComplexPoint location;
  double exponent = 1.0;
  std::optional<EntireFactor> correction;
};

enum class Form { Bode, Root };

struct MeromorphicSpec {
  Form form = Form::Bode;
  EntireFactor prefactor;
  double origin_order = 0.0;  // exponent of an explicit s^k factor
  std::vector<ZeroTerm> zeros;
  std::vector<PoleTerm> poles;
};

enum class ValueKind { Regular, Zero, Pole };

/// W(s) as (ln|W|, principal arg W). Zeros and poles are flagged rather than
/// represented by infinities in complex arithmetic.
struct FunctionValue {
  double log_magnitude = 0.0;
  double phase = 0.0;
  ValueKind kind = ValueKind::Regular;

  static FunctionValue zero() noexcept {
    return {-std::numeric_limits<double>::infinity(), 0.0, ValueKind::Zero};
  }
  static FunctionValue pole() noexcept {
    return {std::numeric_limits<double>::infinity(), 0.0, ValueKind::Pole};
  }
  static FunctionValue from_log(Complex log_value) noexcept {
    return {log_value.real(), wrap_pi(log_value.imag()), ValueKind::Regular};
  }
  static FunctionValue from_value(Complex value) noexcept {
    if (value == Complex{0.0, 0.0}) return zero();
    return {std::log(std::abs(value)), std::arg(value), ValueKind::Regular};
  }

  bool regular() const noexcept { return kind == ValueKind::Regular; }

  /// u + iv. Only meaningful for regular values.
  Complex value() const noexcept { return std::polar(std::exp(log_magnitude), phase); }
};

enum class FactorRole { Prefactor, Zero, Pole, Origin };

struct PhaseTerm {
  FactorRole role;
  std::size_t index;  // position in spec.zeros / spec.poles; 0 otherwise
  double value;
};

namespace detail {

/// One (s - c)^w factor of the normalized product. Zeros carry w > 0, poles
/// w < 0. Bode-form terms carry the normalization constants ln|c| and arg(-c).
struct Factor {
  FactorRole role;
  std::size_t index;
  Complex center;
  double weight;
  double log_offset;
  double arg_offset;
  const EntireFactor* correction;
};

inline std::vector<Factor> factors(const MeromorphicSpec& spec) {
  std::vector<Factor> out;
  out.reserve(spec.zeros.size() + spec.poles.size() + 1);
  const bool bode = spec.form == Form::Bode;
  auto push = [&](FactorRole role, std::size_t i, const auto& term, double sign) {
    const Complex c = term.location;
    out.push_back(Factor{role, i, c, sign * term.exponent, bode ? std::log(std::abs(c)) : 0.0,
                         bode ? std::arg(Complex{0.0, 0.0} - c) : 0.0,  // not -c: keep the sign of zero
                         term.correction ? &*term.correction : nullptr});
  };
  for (std::size_t i = 0; i < spec.zeros.size(); ++i) push(FactorRole::Zero, i, spec.zeros[i], 1.0);
  for (std::size_t i = 0; i < spec.poles.size(); ++i) push(FactorRole::Pole, i, spec.poles[i], -1.0);
  if (spec.origin_order != 0.0) {
    out.push_back(Factor{FactorRole::Origin, 0, Complex{0.0, 0.0}, spec.origin_order, 0.0, 0.0, nullptr});
  }
  return out;
}

/// log of a term's correction factor, signed for its side of the fraction.
inline Complex correction_log(const Factor& f, Complex s) {
  if (f.correction == nullptr) return {0.0, 0.0};
  const double sign = f.weight > 0.0 ? 1.0 : -1.0;
  Complex acc = sign * f.correction->polynomial(s);
  if (f.correction->weierstrass_order) {
    const Complex u = s / f.center;
    Complex power{1.0, 0.0};
    Complex sum{0.0, 0.0};
    for (unsigned k = 1; k <= *f.correction->weierstrass_order; ++k) {
      power *= u;
      sum += power / static_cast<double>(k);
    }
    acc += f.weight * sum;
  }
  return acc;
}

inline Complex correction_log_derivative(const Factor& f, Complex s) {
  if (f.correction == nullptr) return {0.0, 0.0};
  const double sign = f.weight > 0.0 ? 1.0 : -1.0;
  Complex acc = sign * f.correction->polynomial_derivative(s);
  if (f.correction->weierstrass_order) {
    Complex power{1.0, 0.0};  // s^{k-1}
    Complex inv_c_pow = 1.0 / f.center;
    Complex sum{0.0, 0.0};
    for (unsigned k = 1; k <= *f.correction->weierstrass_order; ++k) {
      sum += power * inv_c_pow;
      power *= s;
      inv_c_pow /= f.center;
    }
    acc += f.weight * sum;
  }
  return acc;
}

/// Polynomial coefficients equal to a term's full correction log, so the
/// correction can be moved into the prefactor when the term is cancelled.
inline std::vector<Complex> correction_as_polynomial(const Factor& f) {
  std::vector<Complex> coeffs;
  if (f.correction == nullptr) return coeffs;
  const double sign = f.weight > 0.0 ? 1.0 : -1.0;
  for (const Complex& c : f.correction->exponent_polynomial) coeffs.push_back(sign * c);
  if (f.correction->weierstrass_order) {
    const unsigned p = *f.correction->weierstrass_order;
    if (coeffs.size() < p + 1) coeffs.resize(p + 1, Complex{0.0, 0.0});
    Complex inv_c_pow{1.0, 0.0};
    for (unsigned k = 1; k <= p; ++k) {
      inv_c_pow /= f.center;
      coeffs[k] += f.weight * inv_c_pow / static_cast<double>(k);
    }
  }
  return coeffs;
}

inline void add_polynomial(std::vector<Complex>& into, const std::vector<Complex>& extra) {
  if (into.size() < extra.size()) into.resize(extra.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < extra.size(); ++i) into[i] += extra[i];
}

/// Net exponent of all factors centred within `snap` of s (0 if none).
inline std::optional<double> coincident_weight(const std::vector<Factor>& fs, Complex s, double snap) {
  std::optional<double> net;
  for (const Factor& f : fs) {
    if (s == f.center || std::abs(s - f.center) <= snap) net = net.value_or(0.0) + f.weight;
  }
  return net;
}

inline bool coincides(const Factor& f, Complex s, double snap) {
  return s == f.center || std::abs(s - f.center) <= snap;
}

}  // namespace detail

/// Throws InvalidSpec when the spec violates the data-model invariants.
inline void validate(const MeromorphicSpec& spec) {
  auto check_term = [&](const auto& term, const char* what, std::size_t i) {
    const std::string where = std::string(what) + " " + std::to_string(i);
    if (!std::isfinite(term.location.real()) || !std::isfinite(term.location.imag())) {
      throw Error(ErrorCode::InvalidSpec, where + " has a non-finite location");
    }
    if (!(term.exponent > 0.0) || !std::isfinite(term.exponent)) {
      throw Error(ErrorCode::InvalidSpec, where + " needs a positive finite exponent");
    }
    if (term.location == Complex{0.0, 0.0}) {
      if (spec.form == Form::Bode) {
        throw Error(ErrorCode::InvalidSpec, where + " sits at the origin; use origin_order in Bode form");
      }
      if (term.correction && term.correction->weierstrass_order) {
        throw Error(ErrorCode::InvalidSpec, where + " at the origin cannot carry a Weierstrass correction");
      }
    }
  };
  for (std::size_t i = 0; i < spec.zeros.size(); ++i) check_term(spec.zeros[i], "zero", i);
  for (std::size_t i = 0; i < spec.poles.size(); ++i) check_term(spec.poles[i], "pole", i);
  if (!std::isfinite(spec.origin_order)) throw Error(ErrorCode::InvalidSpec, "origin_order is not finite");
  if (spec.prefactor.weierstrass_order) {
    throw Error(ErrorCode::InvalidSpec, "the prefactor has no anchor for a Weierstrass correction");
  }
  for (const ZeroTerm& z : spec.zeros) {
    for (const PoleTerm& p : spec.poles) {
      if (z.location == p.location && z.exponent == p.exponent) {
        throw Error(ErrorCode::InvalidSpec, "coincident zero and pole must be cancelled first");
      }
    }
  }
}

inline bool is_regular_point(const MeromorphicSpec& spec, ComplexPoint s,
                             double snap = kDefaultSnapRadius) {
  for (const auto& f : detail::factors(spec)) {
    if (detail::coincides(f, s, snap)) return false;
  }
  return true;
}

inline FunctionValue evaluate(const MeromorphicSpec& spec, ComplexPoint s,
                              double snap = kDefaultSnapRadius) {
  const auto fs = detail::factors(spec);
  if (auto net = detail::coincident_weight(fs, s, snap)) {
    if (*net > 0.0) return FunctionValue::zero();
    if (*net < 0.0) return FunctionValue::pole();
  }
  Complex acc = spec.prefactor.polynomial(s);
  for (const auto& f : fs) {
    acc += detail::correction_log(f, s);
    if (detail::coincides(f, s, snap)) continue;  // fully cancelled against a partner
    const Complex d = s - f.center;
    acc += f.weight * Complex{std::log(std::abs(d)) - f.log_offset, std::arg(d) - f.arg_offset};
  }
  return FunctionValue::from_log(acc);
}

/// W'(s)/W(s) from the factored form.
inline Complex log_derivative(const MeromorphicSpec& spec, ComplexPoint s,
                              double snap = kDefaultSnapRadius) {
  if (!is_regular_point(spec, s, snap)) {
    throw Error(ErrorCode::NotRegularPoint, "log-derivative requested at a zero or pole");
  }
  Complex acc = spec.prefactor.polynomial_derivative(s);
  for (const auto& f : detail::factors(spec)) {
    acc += f.weight / (s - f.center);
    acc += detail::correction_log_derivative(f, s);
  }
  return acc;
}

/// d/ds of the log-derivative; used when locating saddles of |W|.
inline Complex log_second_derivative(const MeromorphicSpec& spec, ComplexPoint s,
                                     double snap = kDefaultSnapRadius) {
  if (!is_regular_point(spec, s, snap)) {
    throw Error(ErrorCode::NotRegularPoint, "log-derivative requested at a zero or pole");
  }
  Complex acc{0.0, 0.0};
  const auto& poly = spec.prefactor.exponent_polynomial;
  for (std::size_t i = poly.size(); i-- > 2;) {
    acc = acc * s + static_cast<double>(i * (i - 1)) * poly[i];
  }
  for (const auto& f : detail::factors(spec)) {
    const Complex d = s - f.center;
    acc -= f.weight / (d * d);
    if (f.correction == nullptr) continue;
    // corrections are polynomials; differentiate their coefficient form
    const auto coeffs = detail::correction_as_polynomial(f);
    Complex c2{0.0, 0.0};
    for (std::size_t i = coeffs.size(); i-- > 2;) {
      c2 = c2 * s + static_cast<double>(i * (i - 1)) * coeffs[i];
    }
    acc += c2;
  }
  return acc;
}

/// Per-factor phase contributions in the additive form
///   arg G + sum gamma_l (arg(s - z_l) - arg(-z_l)) - sum beta_j (arg(s - p_j) - arg(-p_j)) + ...
/// where every vector angle is a two-argument arctangent. Pole entries carry
/// their negative sign already.
inline std::vector<PhaseTerm> phase_terms(const MeromorphicSpec& spec, ComplexPoint s,
                                          double snap = kDefaultSnapRadius) {
  if (!is_regular_point(spec, s, snap)) {
    throw Error(ErrorCode::NotRegularPoint, "phase terms requested at a zero or pole");
  }
  std::vector<PhaseTerm> out;
  if (!spec.prefactor.exponent_polynomial.empty()) {
    out.push_back({FactorRole::Prefactor, 0, spec.prefactor.polynomial(s).imag()});
  }
  for (const auto& f : detail::factors(spec)) {
    const double vec = f.weight * (std::arg(s - f.center) - f.arg_offset);
    out.push_back({f.role, f.index, vec + detail::correction_log(f, s).imag()});
  }
  return out;
}

/// Cancels zeros and poles sharing an identical location. The surviving term
/// carries the exponent difference; corrections of merged terms move into the
/// prefactor (they are polynomials in the exponent, so this is exact).
inline MeromorphicSpec cancel_coincident(const MeromorphicSpec& spec) {
  MeromorphicSpec out;
  out.form = spec.form;
  out.prefactor = spec.prefactor;
  out.origin_order = spec.origin_order;

  auto shared = [&](Complex loc) {
    const bool in_zeros = std::any_of(spec.zeros.begin(), spec.zeros.end(),
                                      [&](const ZeroTerm& z) { return z.location == loc; });
    const bool in_poles = std::any_of(spec.poles.begin(), spec.poles.end(),
                                      [&](const PoleTerm& p) { return p.location == loc; });
    return in_zeros && in_poles;
  };

  std::vector<Complex> merged;  // locations already emitted as a net term
  auto emit_net = [&](Complex loc) {
    if (std::find(merged.begin(), merged.end(), loc) != merged.end()) return;
    merged.push_back(loc);
    double net = 0.0;
    const auto fs = detail::factors(spec);
    for (const auto& f : fs) {
      if (f.role == FactorRole::Origin || f.center != loc) continue;
      net += f.weight;
      detail::add_polynomial(out.prefactor.exponent_polynomial, detail::correction_as_polynomial(f));
    }
    if (net > 0.0) out.zeros.push_back(ZeroTerm{loc, net, std::nullopt});
    if (net < 0.0) out.poles.push_back(PoleTerm{loc, -net, std::nullopt});
  };

  for (const ZeroTerm& z : spec.zeros) {
    if (shared(z.location)) emit_net(z.location);
    else out.zeros.push_back(z);
  }
  for (const PoleTerm& p : spec.poles) {
    if (shared(p.location)) emit_net(p.location);
    else out.poles.push_back(p);
  }
  return out;
}

}  // namespace merolocus
