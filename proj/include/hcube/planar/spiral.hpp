#pragma once

/// \file spiral.hpp
/// \brief Geometric checks relating the two-gone to the lens: the boundary
/// spiral leaving the corner 1 stays inside the upper arc circle, and the
/// coefficient-integral and radial-derivative reports.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hcube/fit.hpp"
#include "hcube/planar/domains.hpp"
#include "hcube/planar/series.hpp"

namespace hcube::planar {

/// a = pi / tan(pi alpha / 2).
inline double spiral_parameter(double alpha) { return kPi * TwoGone(alpha).slope(); }

/// Point (e^{-t} cos(pi t / a), e^{-t} sin(pi t / a)) of the boundary spiral.
inline cplx spiral_point(double alpha, double t) {
  const double a = spiral_parameter(alpha);
  return {std::exp(-t) * std::cos(kPi * t / a), std::exp(-t) * std::sin(kPi * t / a)};
}

/// 1 - e^{-2t} - 2 e^{-t} (a/pi) sin(pi t / a). Equal to r^2 - |Gamma(t) + i h|^2 for the
/// circle of radius r = 1/sin(pi alpha / 2) centred at -i h, h = a / pi.
inline double spiral_margin(double alpha, double t) {
  const double c = TwoGone(alpha).slope();
  return -std::expm1(-2 * t) - 2 * c * std::exp(-t) * std::sin(t / c);
}

struct SpiralReport {
  double worst_margin = 0;  ///< min over the grid of spiral_margin
  double worst_t = 0;
  double cubic_coefficient = 0;  ///< margin / t^3 fitted at small t
  double predicted_cubic = 0;    ///< 1/3 + 2 pi^2 / (6 a^2)
  double boundary_defect = 0;    ///< max | |Gamma| - R(arg Gamma) |
  double lens_margin = 0;        ///< min lens margin of the sampled spiral (excluding t = 0)
};

/// Evaluates the margin on `grid` points of (0, t_max], t_max <= a/2.
inline SpiralReport spiral_curve_check(double alpha, double t_max, int grid = 4000) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("spiral_curve_check: need alpha in (0, 1)");
  const double a = spiral_parameter(alpha);
  if (!(t_max > 0.0 && t_max <= a / 2 * (1 + 1e-12)))
    throw std::invalid_argument("spiral_curve_check: need 0 < t_max <= a/2");
  const TwoGone gone(alpha);
  const Lens lens(lens_radius(alpha));
  SpiralReport out;
  out.worst_margin = INFINITY;
  out.lens_margin = INFINITY;
  for (int i = 1; i <= grid; ++i) {
    const double t = t_max * i / grid;
    const double m = spiral_margin(alpha, t);
    if (m < out.worst_margin) {
      out.worst_margin = m;
      out.worst_t = t;
    }
    const cplx g = spiral_point(alpha, t);
    out.boundary_defect = std::max(out.boundary_defect, std::abs(std::abs(g) - gone.polar_radius(std::arg(g))));
    out.lens_margin = std::min(out.lens_margin, lens.margin(g));
  }
  // margin = k t^3 + O(t^4): fit margin / t^3 linearly in t on small t and keep the intercept.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 40;
  const double t0 = std::min(t_max, 0.05) / n;
  for (int i = 1; i <= n; ++i) {
    const double t = t0 * i, y = spiral_margin(alpha, t) / (t * t * t);
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.cubic_coefficient = (sy - slope * sx) / n;
  out.predicted_cubic = 1.0 / 3.0 + 2.0 * kPi * kPi / (6.0 * a * a);
  return out;
}

/// m^alpha times the coefficient integral over a sweep of m.
inline std::vector<std::pair<double, double>> coeff_bound_sweep(double alpha, const std::vector<double>& ms,
                                                                double a = 1.0) {
  std::vector<std::pair<double, double>> out;
  for (double m : ms) out.emplace_back(m, std::pow(m, alpha) * coeff_bound_integral(alpha, m, a));
  return out;
}

/// |phi'(x)| / (1 - x^2)^{alpha - 1} along the radius to the corner 1, for reporting.
inline std::vector<std::pair<double, double>> radial_derivative_ratios(const PowerSeries& phi, double alpha,
                                                                       const std::vector<double>& xs) {
  const auto dphi = phi.derivative();
  std::vector<std::pair<double, double>> out;
  for (double x : xs) out.emplace_back(x, std::abs(dphi(x)) / std::pow(1.0 - x * x, alpha - 1.0));
  return out;
}

inline std::vector<std::pair<double, double>> radial_derivative_ratios(const LensMap& phi,
                                                                       const std::vector<double>& xs) {
  std::vector<std::pair<double, double>> out;
  for (double x : xs) out.emplace_back(x, std::abs(phi.derivative(x)) / std::pow(1.0 - x * x, phi.alpha() - 1.0));
  return out;
}

}  // namespace hcube::planar
