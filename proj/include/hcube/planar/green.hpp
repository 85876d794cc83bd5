#pragma once

/// \file green.hpp
/// \brief Green's functions with pole at infinity for the complements of a
/// segment and of a scaled lens.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hcube/planar/domains.hpp"

namespace hcube::planar {

/// Green's function of C \ [-c, c]: ln|u + sqrt(u-1) sqrt(u+1)|, u = z / c.
class SegmentGreen {
public:
  explicit SegmentGreen(double c) : c_(c) {
    if (!(c > 0.0)) throw std::invalid_argument("SegmentGreen: need c > 0");
  }

  [[nodiscard]] double half_length() const { return c_; }

  [[nodiscard]] double operator()(cplx z) const {
    if (z.imag() == 0.0 && std::abs(z.real()) <= c_) throw std::domain_error("SegmentGreen: z on the segment");
    const cplx u = z / c_;
    // The product of principal roots behaves like u at infinity and is cut on [-1, 1].
    return std::log(std::abs(u + std::sqrt(u - 1.0) * std::sqrt(u + 1.0)));
  }

  /// Robin constant: G(z) - ln|z| -> ln(2 / c).
  [[nodiscard]] double robin() const { return std::log(2.0 / c_); }

private:
  double c_;
};

inline SegmentGreen green_segment(double c) { return SegmentGreen(c); }

/// Segment [-1 + 1/d^2, 1 - 1/d^2].
inline SegmentGreen green_segment_for_degree(double d) { return SegmentGreen(1.0 - 1.0 / (d * d)); }

/// Green's function of the exterior of the lens with parameter r scaled by s.
/// zeta = (1+w)/(1-w), w = z/s, sends the lens to the sector |arg zeta| < pi alpha / 2;
/// eta = (-zeta)^gamma, gamma = pi / (2 pi - pi alpha), opens the complementary
/// sector to the right half-plane; Psi = (1+eta)/(1-eta) maps it outside the unit disk.
class LensExteriorGreen {
public:
  LensExteriorGreen(double r, double scale) : lens_(r, scale) {
    gamma_ = kPi / (2 * kPi - kPi * lens_.alpha());
  }

  [[nodiscard]] const Lens& lens() const { return lens_; }
  [[nodiscard]] double exponent() const { return gamma_; }

  /// ln|Psi(z)|, split as ln|1 + eta| - ln|1 - eta| to keep accuracy near infinity.
  [[nodiscard]] double operator()(cplx z) const {
    const cplx eta = half_plane(z);
    return std::log(std::abs(1.0 + eta)) - std::log(std::abs(1.0 - eta));
  }

  [[nodiscard]] cplx exterior_map(cplx z) const {
    const cplx eta = half_plane(z);
    return (1.0 + eta) / (1.0 - eta);
  }

private:
  [[nodiscard]] cplx half_plane(cplx z) const {
    if (lens_.margin(z) > 1e-14 * lens_.scale()) throw std::domain_error("LensExteriorGreen: z inside the lens");
    const cplx w = z / lens_.scale();
    return std::pow(-(1.0 + w) / (1.0 - w), gamma_);
  }

  Lens lens_;
  double gamma_;
};

inline LensExteriorGreen green_lens_exterior(double r, double scale = 1.0) { return LensExteriorGreen(r, scale); }

/// Scale 1 - d^{-beta} used for the degree-d lens.
inline double lens_scale(double d, double beta) { return 1.0 - std::pow(d, -beta); }

/// Predicted decay exponent of G(1) in d: -beta pi / (2 pi - pi alpha).
inline double lens_green_exponent(double alpha, double beta) { return -beta * kPi / (2 * kPi - kPi * alpha); }

/// beta = 2 - alpha makes G(1) of order 1/d.
inline double balancing_beta(double alpha) { return 2.0 - alpha; }

}  // namespace hcube::planar
