#include "qomchaos/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qomchaos {

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 64.0, kRight = 16.0, kTop = 16.0, kBottom = 48.0;

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct Range {
  double lo, hi;
  double map(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

Range padded(double lo, double hi) {
  if (hi > lo) {
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
  }
  const double w = std::max(1.0, std::abs(lo) * 0.1);
  return {lo - 0.5 * w, lo + 0.5 * w};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_svg(std::span<const double> xs, std::span<const double> ys, PlotKind kind,
                     const std::string& x_label, const std::string& y_label) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("emit_svg: x and y lengths differ");
  if (xs.empty()) throw std::invalid_argument("emit_svg: need at least one row");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw std::invalid_argument("emit_svg: non-finite value at row " + std::to_string(i));

  double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  const Range rx = padded(xmin, xmax);
  const Range ry = padded(ymin, ymax);

  auto px = [&](double v) { return rx.map(v, kLeft, kWidth - kRight); };
  auto py = [&](double v) { return ry.map(v, kHeight - kBottom, kTop); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(kWidth - kLeft - kRight) << "\" height=\"" << fmt(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // 5 ticks per axis
  for (int k = 0; k < 5; ++k) {
    const double f = static_cast<double>(k) / 4.0;
    const double xv = rx.lo + f * (rx.hi - rx.lo);
    const double yv = ry.lo + f * (ry.hi - ry.lo);
    const double xp = px(xv), yp = py(yv);
    svg << "<line x1=\"" << fmt(xp) << "\" y1=\"" << fmt(kHeight - kBottom) << "\" x2=\""
        << fmt(xp) << "\" y2=\"" << fmt(kHeight - kBottom + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(xp) << "\" y=\"" << fmt(kHeight - kBottom + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(xv, "%.6g") << "</text>\n";
    svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(yp) << "\" x2=\"" << fmt(kLeft)
        << "\" y2=\"" << fmt(yp) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(yp + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(yv, "%.6g") << "</text>\n";
  }

  svg << "<text x=\"" << fmt(kLeft + 0.5 * (kWidth - kLeft - kRight)) << "\" y=\""
      << fmt(kHeight - 8) << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(x_label)
      << "</text>\n";
  svg << "<text x=\"14\" y=\"" << fmt(kTop + 0.5 * (kHeight - kTop - kBottom))
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt(kTop + 0.5 * (kHeight - kTop - kBottom)) << ")\">" << escape(y_label)
      << "</text>\n";

  if (kind == PlotKind::line) {
    svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) svg << ' ';
      svg << fmt(px(xs[i])) << ',' << fmt(py(ys[i]));
    }
    svg << "\"/>\n";
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i)
      svg << "<circle cx=\"" << fmt(px(xs[i])) << "\" cy=\"" << fmt(py(ys[i]))
          << "\" r=\"1\" fill=\"#1f4e9c\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qomchaos
