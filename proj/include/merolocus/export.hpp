#pragma once

// CSV and SVG output. Numbers use the shortest round-trip decimal form so a
// written file parses back to the same binary64 values.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "merolocus/angles.hpp"
#include "merolocus/error.hpp"
#include "merolocus/locus_function.hpp"
#include "merolocus/tracer.hpp"

namespace merolocus {

inline std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

inline std::string curve_csv(const LocusCurve& curve) {
  std::string out = "index,sigma,t,K,residual\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const CurvePoint& p = curve.points[i];
    out += std::to_string(i) + ',' + format_double(p.s.real()) + ',' + format_double(p.s.imag()) + ',' +
           format_double(p.k) + ',' + format_double(p.residual) + '\n';
  }
  return out;
}

inline std::string fan_csv(const AngleFan& fan) {
  std::string out = "degree,angle\n";
  for (const FanEntry& e : fan.entries) {
    out += format_double(e.degree.degree()) + ',' + format_double(e.angle.theta) + '\n';
  }
  return out;
}

inline std::string points_csv(std::span<const ComplexPoint> points) {
  std::string out = "sigma,t\n";
  for (const ComplexPoint& p : points) out += format_double(p.real()) + ',' + format_double(p.imag()) + '\n';
  return out;
}

namespace detail {

struct PlotFrame {
  double sigma_min, sigma_max, t_min, t_max;
  double width = 800.0;
  double height = 600.0;
  double margin = 40.0;

  double scale() const {
    const double sx = (width - 2 * margin) / std::max(sigma_max - sigma_min, 1e-12);
    const double sy = (height - 2 * margin) / std::max(t_max - t_min, 1e-12);
    return std::min(sx, sy);
  }
  double x(double sigma) const { return margin + (sigma - sigma_min) * scale(); }
  double y(double t) const { return height - margin - (t - t_min) * scale(); }
};

inline std::string fixed(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  return std::string(buf, result.ptr);
}

}  // namespace detail

/// Deterministic SVG: poles as crosses, zeros as circles, one polyline per
/// curve labelled with its degree in units of pi, saddles as filled squares.
inline std::string emit_plot(std::span<const LocusCurve> curves, std::span<const Anchor> poles,
                             std::span<const Anchor> zeros) {
  if (curves.empty()) throw Error(ErrorCode::EmptyInput, "nothing to plot");
  double lo_s = std::numeric_limits<double>::infinity();
  double hi_s = -lo_s;
  double lo_t = lo_s;
  double hi_t = -lo_s;
  auto extend = [&](ComplexPoint p) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) return;
    lo_s = std::min(lo_s, p.real());
    hi_s = std::max(hi_s, p.real());
    lo_t = std::min(lo_t, p.imag());
    hi_t = std::max(hi_t, p.imag());
  };
  for (const LocusCurve& c : curves) {
    for (const CurvePoint& p : c.points) extend(p.s);
  }
  for (const Anchor& a : poles) extend(a.location);
  for (const Anchor& a : zeros) extend(a.location);
  const double pad = 0.05 * std::max({hi_s - lo_s, hi_t - lo_t, 1.0});
  const detail::PlotFrame frame{lo_s - pad, hi_s + pad, lo_t - pad, hi_t + pad};

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (frame.t_min < 0.0 && frame.t_max > 0.0) {
    svg += "<line x1=\"0\" y1=\"" + detail::fixed(frame.y(0.0)) + "\" x2=\"800\" y2=\"" +
           detail::fixed(frame.y(0.0)) + "\" stroke=\"#ccc\"/>\n";
  }
  if (frame.sigma_min < 0.0 && frame.sigma_max > 0.0) {
    svg += "<line x1=\"" + detail::fixed(frame.x(0.0)) + "\" y1=\"0\" x2=\"" + detail::fixed(frame.x(0.0)) +
           "\" y2=\"600\" stroke=\"#ccc\"/>\n";
  }
  for (const LocusCurve& c : curves) {
    svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" data-degree-pi=\"" +
           format_double(c.degree.degree() / kPi) + "\" points=\"";
    bool first = true;
    for (const CurvePoint& p : c.points) {
      if (!std::isfinite(p.s.real()) || !std::isfinite(p.s.imag())) continue;
      if (!first) svg += ' ';
      svg += detail::fixed(frame.x(p.s.real())) + ',' + detail::fixed(frame.y(p.s.imag()));
      first = false;
    }
    svg += "\"><title>degree " + format_double(c.degree.degree() / kPi) + " pi</title></polyline>\n";
    if (c.saddle) {
      const double x = frame.x(c.saddle->location.real());
      const double y = frame.y(c.saddle->location.imag());
      svg += "<rect class=\"saddle\" x=\"" + detail::fixed(x - 3) + "\" y=\"" + detail::fixed(y - 3) +
             "\" width=\"6\" height=\"6\" fill=\"#b03030\"/>\n";
    }
  }
  for (const Anchor& a : poles) {
    const double x = frame.x(a.location.real());
    const double y = frame.y(a.location.imag());
    svg += "<path class=\"pole\" d=\"M" + detail::fixed(x - 5) + ',' + detail::fixed(y - 5) + " L" +
           detail::fixed(x + 5) + ',' + detail::fixed(y + 5) + " M" + detail::fixed(x - 5) + ',' +
           detail::fixed(y + 5) + " L" + detail::fixed(x + 5) + ',' + detail::fixed(y - 5) +
           "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  for (const Anchor& a : zeros) {
    svg += "<circle class=\"zero\" cx=\"" + detail::fixed(frame.x(a.location.real())) + "\" cy=\"" +
           detail::fixed(frame.y(a.location.imag())) + "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace merolocus
