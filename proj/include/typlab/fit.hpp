#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace typlab {

/// Power-law fit delta ~ C * D^(-alpha), obtained by ordinary least squares
/// on (log D, log delta). exponent is alpha (positive for decaying data);
/// intercept is log C; the standard error comes from the usual OLS slope
/// variance (zero when only two points are fitted).
struct ScalingFit {
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double intercept = 0.0;
  int points_used = 0;
  std::vector<std::size_t> excluded_points;
};

/// points: (dimension, delta) pairs, all positive. exclude: indices into
/// points to leave out of the fit. At least two included points required.
ScalingFit fit_power_law(std::span<const std::pair<double, double>> points,
                         std::span<const std::size_t> exclude = {});

}  // namespace typlab
