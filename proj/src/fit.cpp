#include "typlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace typlab {

ScalingFit fit_power_law(std::span<const std::pair<double, double>> points,
                         std::span<const std::size_t> exclude) {
  ScalingFit fit;
  fit.excluded_points.assign(exclude.begin(), exclude.end());
  std::sort(fit.excluded_points.begin(), fit.excluded_points.end());

  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::binary_search(fit.excluded_points.begin(), fit.excluded_points.end(), i)) continue;
    const auto [dim, delta] = points[i];
    if (!(dim > 0.0) || !(delta > 0.0))
      throw std::invalid_argument("power-law fit needs positive dimensions and deltas");
    xs.push_back(std::log(dim));
    ys.push_back(std::log(delta));
  }
  const auto count = xs.size();
  if (count < 2) throw std::invalid_argument("power-law fit needs at least two included points");

  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= static_cast<double>(count);
  y_mean /= static_cast<double>(count);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  if (sxx == 0.0) throw std::invalid_argument("power-law fit needs at least two distinct dimensions");

  const double slope = sxy / sxx;
  fit.exponent = -slope;
  fit.intercept = y_mean - slope * x_mean;
  fit.points_used = static_cast<int>(count);

  if (count > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double r = ys[i] - (fit.intercept + slope * xs[i]);
      ssr += r * r;
    }
    fit.exponent_stderr = std::sqrt(ssr / static_cast<double>(count - 2) / sxx);
  }
  return fit;
}

}  // namespace typlab
