// Deterministic SVG scatter/line plots: fixed 800x600 viewBox, linear axes
// with 5% range padding, no timestamps or external references. The same
// input always produces a byte-identical document.
#pragma once

#include <span>
#include <string>

namespace qomchaos {

enum class PlotKind { scatter, line };

std::string emit_svg(std::span<const double> xs, std::span<const double> ys, PlotKind kind,
                     const std::string& x_label, const std::string& y_label);

}  // namespace qomchaos
