#pragma once

/// \file fit.hpp
/// \brief Least-squares power-law fits in log-log coordinates.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hcube {

/// Result of fitting log(value) = slope * log(x) + intercept.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  ///< (x, value) pairs used

  /// Value predicted by the fitted power law at x.
  [[nodiscard]] double predict(double x) const { return std::exp(intercept) * std::pow(x, slope); }
};

/// Fits a power law through (x, value) pairs with x > 0, value > 0.
/// Throws std::invalid_argument on fewer than 3 points, repeated x values,
/// or non-positive entries.
inline ExponentFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
  const auto count = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, v] : points) {
    if (!(x > 0.0) || !(v > 0.0) || !std::isfinite(x) || !std::isfinite(v))
      throw std::invalid_argument("fit_power_law: entries must be positive and finite");
    sx += std::log(x);
    sy += std::log(v);
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, v] : points) {
    const double dx = std::log(x) - mx, dy = std::log(v) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 1e-300) throw std::invalid_argument("fit_power_law: degenerate abscissae");
  std::vector<double> xs;
  xs.reserve(points.size());
  for (const auto& pt : points) xs.push_back(pt.first);
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw std::invalid_argument("fit_power_law: abscissae must be distinct");

  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? std::min(1.0, std::max(0.0, sxy * sxy / (sxx * syy))) : 1.0;
  fit.points.assign(points.begin(), points.end());
  return fit;
}

inline ExponentFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  return fit_power_law(std::span<const std::pair<double, double>>(points));
}

}  // namespace hcube
