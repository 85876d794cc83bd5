#pragma once

/// \file domains.hpp
/// \brief The lens (intersection of two disks) and the two-gone (union of two
/// exponential images of a sector), both with corners at +-1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace hcube::planar {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Opening alpha of the lens with parameter r: pi alpha = 2 asin(1/r).
inline double lens_alpha(double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("lens_alpha: need r >= 1");
  return 2.0 * std::asin(1.0 / r) / kPi;
}

/// Inverse of lens_alpha.
inline double lens_radius(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("lens_radius: need alpha in (0, 1]");
  return 1.0 / std::sin(kPi * alpha / 2);
}

/// alpha = (2/pi) asin(2 sqrt(p-1) / p), the opening attached to an exponent p > 1.
inline double alpha_for_exponent(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("alpha_for_exponent: need p > 1");
  return 2.0 * std::asin(std::min(1.0, 2.0 * std::sqrt(p - 1.0) / p)) / kPi;
}

/// r = p / (2 sqrt(p-1)), the lens parameter with opening alpha_for_exponent(p).
inline double lens_radius_for_exponent(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("lens_radius_for_exponent: need p > 1");
  return p / (2.0 * std::sqrt(p - 1.0));
}

/// Lens {|z - i h| < r s, |z + i h| < r s}, h = s sqrt(r^2 - 1), corners at +-s.
class Lens {
public:
  explicit Lens(double r, double scale = 1.0) : r_(r), s_(scale) {
    if (!(r >= 1.0)) throw std::invalid_argument("Lens: need r >= 1");
    if (!(scale > 0.0 && scale <= 1.0)) throw std::invalid_argument("Lens: need scale in (0, 1]");
  }

  [[nodiscard]] double r() const { return r_; }
  [[nodiscard]] double scale() const { return s_; }
  [[nodiscard]] double alpha() const { return lens_alpha(r_); }
  /// Distance of the arc centres from the real axis, unscaled.
  [[nodiscard]] double offset() const { return std::sqrt(r_ * r_ - 1.0); }
  [[nodiscard]] cplx upper_centre() const { return {0.0, s_ * offset()}; }
  [[nodiscard]] cplx lower_centre() const { return {0.0, -s_ * offset()}; }
  [[nodiscard]] double arc_radius() const { return s_ * r_; }

  /// Closed lens membership, with a relative slack for boundary points.
  [[nodiscard]] bool contains(cplx z, double slack = 0.0) const {
    const double lim = arc_radius() * (1.0 + slack);
    return std::abs(z - upper_centre()) <= lim && std::abs(z - lower_centre()) <= lim;
  }

  /// Signed distance-like margin: positive inside, zero on the boundary.
  [[nodiscard]] double margin(cplx z) const {
    return arc_radius() - std::max(std::abs(z - upper_centre()), std::abs(z - lower_centre()));
  }

  /// Boundary radius in direction theta; the upper half is cut by the lower circle.
  [[nodiscard]] double polar_radius(double theta) const {
    const double c = offset(), sn = std::abs(std::sin(theta));
    return s_ * (-c * sn + std::sqrt(c * c * sn * sn + 1.0));
  }

  /// Interior angle at the corners, 2 asin(1/r).
  [[nodiscard]] double corner_angle() const { return 2.0 * std::asin(1.0 / r_); }

  /// Tangent directions of the two arcs leaving the corner +s into the lens.
  [[nodiscard]] std::pair<cplx, cplx> corner_tangents() const {
    // The radius to the corner is perpendicular to the arc there.
    const cplx corner{s_, 0.0};
    const cplx a = corner - lower_centre(), b = corner - upper_centre();
    // Upper arc belongs to the lower circle; rotate so the tangent points into the upper half-plane.
    cplx ta = a * cplx(0, 1), tb = b * cplx(0, -1);
    return {ta / std::abs(ta), tb / std::abs(tb)};
  }

private:
  double r_;
  double s_;
};

/// The two-gone O_alpha with polar boundary R(theta) = exp(-c min(|theta|, pi - |theta|)),
/// c = cot(pi alpha / 2). alpha = 1 is the unit disk.
class TwoGone {
public:
  explicit TwoGone(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("TwoGone: need alpha in (0, 1]");
    c_ = alpha == 1.0 ? 0.0 : 1.0 / std::tan(kPi * alpha / 2);
  }

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double slope() const { return c_; }

  [[nodiscard]] double log_radius(double theta) const {
    const double a = std::abs(std::remainder(theta, 2 * kPi));
    return -c_ * std::min(a, kPi - a);
  }
  [[nodiscard]] double polar_radius(double theta) const { return std::exp(log_radius(theta)); }

  /// Closed membership |w| <= R(arg w); the origin is inside.
  [[nodiscard]] bool contains(cplx w, double slack = 0.0) const {
    if (w == cplx{}) return true;
    return std::abs(w) <= polar_radius(std::arg(w)) * (1.0 + slack);
  }

  /// Point e^{-t} e^{i t / c} of the boundary spiral leaving the corner 1 upward,
  /// t in [0, c pi / 2].
  [[nodiscard]] cplx spiral_point(double t) const {
    if (c_ == 0.0) throw std::domain_error("TwoGone::spiral_point: undefined for alpha = 1");
    return std::exp(-t) * std::polar(1.0, t / c_);
  }

private:
  double alpha_;
  double c_;
};

inline bool twogone_contains(double alpha, cplx w) { return TwoGone(alpha).contains(w); }

/// Conformal map of the unit disk onto the lens with parameter r:
/// h = (1+z)/(1-z), w = (h^alpha - 1)/(h^alpha + 1) = tanh(alpha artanh z).
class LensMap {
public:
  explicit LensMap(double r) : alpha_(lens_alpha(r)) {}

  [[nodiscard]] double alpha() const { return alpha_; }

  [[nodiscard]] cplx operator()(cplx z) const {
    if (!(std::abs(z) < 1.0)) throw std::domain_error("LensMap: need |z| < 1");
    return boundary_value(z);
  }

  /// Continuous extension to the closed disk; the corners +-1 map to +-1.
  [[nodiscard]] cplx boundary_value(cplx z) const {
    if (z == cplx(1.0, 0.0)) return 1.0;
    if (z == cplx(-1.0, 0.0)) return -1.0;
    const cplx ha = std::pow((1.0 + z) / (1.0 - z), alpha_);
    return (ha - 1.0) / (ha + 1.0);
  }

  /// phi'(z) = alpha (1 - w^2) / (1 - z^2).
  [[nodiscard]] cplx derivative(cplx z) const {
    const cplx w = (*this)(z);
    return alpha_ * (1.0 - w * w) / (1.0 - z * z);
  }

private:
  double alpha_;
};

inline LensMap lens_map(double r) { return LensMap(r); }

}  // namespace hcube::planar
