#pragma once

/// \file series.hpp
/// \brief Truncated Taylor series on the unit disk, the exact lens coefficients
/// and the coefficient-decay checks.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hcube/fit.hpp"
#include "hcube/numeric.hpp"
#include "hcube/planar/domains.hpp"

namespace hcube::planar {

/// c_0 + c_1 z + ... + c_N z^N with an attached estimate of the omitted tail.
struct PowerSeries {
  std::vector<cplx> coeffs;
  double truncation_error = 0.0;  ///< bound or estimate for sum_{n > N} |c_n|
  double radius = 1.0;            ///< disk on which the series is used

  PowerSeries() = default;
  explicit PowerSeries(std::vector<cplx> c, double tail = 0.0) : coeffs(std::move(c)), truncation_error(tail) {}

  [[nodiscard]] std::size_t size() const { return coeffs.size(); }
  [[nodiscard]] long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  [[nodiscard]] cplx operator[](std::size_t n) const { return n < coeffs.size() ? coeffs[n] : cplx{}; }

  /// Horner evaluation.
  [[nodiscard]] cplx operator()(cplx z) const {
    cplx acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  [[nodiscard]] PowerSeries derivative() const {
    std::vector<cplx> d(coeffs.size() > 1 ? coeffs.size() - 1 : 1, cplx{});
    for (std::size_t n = 1; n < coeffs.size(); ++n) d[n - 1] = static_cast<double>(n) * coeffs[n];
    return PowerSeries(std::move(d));
  }

  /// Largest |Im c_n|.
  [[nodiscard]] double imaginary_defect() const {
    double worst = 0;
    for (const auto& c : coeffs) worst = std::max(worst, std::abs(c.imag()));
    return worst;
  }

  /// Values on the M-point grid e^{2 pi i j / M} (M >= size) via one inverse FFT.
  [[nodiscard]] std::vector<cplx> sample_circle(std::size_t M) const {
    if (M < coeffs.size()) throw std::invalid_argument("PowerSeries::sample_circle: grid too coarse");
    std::vector<cplx> spec(M, cplx{});
    std::copy(coeffs.begin(), coeffs.end(), spec.begin());
    auto v = numeric::ifft(spec);
    for (auto& x : v) x *= static_cast<double>(M);
    return v;
  }
};

/// Taylor coefficients of tanh(alpha artanh z) up to degree N.
/// From (1 - z^2) w' = alpha (1 - w^2):
/// (n+1) w_{n+1} = (n-1) w_{n-1} + alpha (delta_{n0} - (w^2)_n).
/// Only odd coefficients are nonzero.
inline PowerSeries lens_series(double alpha, std::size_t N) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("lens_series: need alpha in (0, 1]");
  std::vector<double> w(N + 1, 0.0);
  if (N >= 1) w[1] = alpha;
  for (std::size_t n = 2; n + 1 <= N; n += 2) {
    // (w^2)_n for even n pairs odd indices i + j = n.
    double sq = 0;
    for (std::size_t i = 1; i < n; i += 2) sq += w[i] * w[n - i];
    w[n + 1] = ((n - 1.0) * w[n - 1] - alpha * sq) / (n + 1.0);
  }
  std::vector<cplx> c(w.begin(), w.end());
  PowerSeries s(std::move(c));
  // |c_n| ~ C n^{-1-alpha}; the tail is of order N^{-alpha}.
  if (N >= 2 && alpha < 1.0) s.truncation_error = std::abs(w[N % 2 ? N : N - 1]) * N / alpha;
  return s;
}

inline PowerSeries lens_series_for_radius(double r, std::size_t N) { return lens_series(lens_alpha(r), N); }

/// Coefficients below this modulus are excluded from decay fits.
inline constexpr double kCoefficientFloor = 1e-14;

/// Log-log fit of |c_n| against n over [lo, hi] (hi = 0 means the last index).
/// Returns nullopt for alpha >= 1, where the map is the identity.
inline std::optional<ExponentFit> coeff_asymptotics_check(const PowerSeries& s, double alpha, std::size_t lo = 64,
                                                          std::size_t hi = 0) {
  if (alpha >= 1.0) return std::nullopt;
  if (s.size() < 128) throw std::invalid_argument("coeff_asymptotics_check: need at least 128 coefficients");
  if (hi == 0 || hi >= s.size()) hi = s.size() - 1;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = lo; n <= hi; ++n) {
    const double a = std::abs(s.coeffs[n]);
    if (a > kCoefficientFloor) pts.emplace_back(static_cast<double>(n), a);
  }
  return fit_power_law(pts);
}

/// Integral bound for the m-th coefficient: int_0^2 (1 + a y)^{-m} y^{alpha - 1} dy.
/// Substituting y = u^{1/alpha} removes the endpoint singularity.
inline double coeff_bound_integral(double alpha, double m, double a = 1.0) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("coeff_bound_integral: need alpha in (0, 1]");
  if (!(m > 0.0) || !(a > 0.0)) throw std::invalid_argument("coeff_bound_integral: need m > 0 and a > 0");
  const double top = std::pow(2.0, alpha);
  auto f = [&](double u) { return std::exp(-m * std::log1p(a * std::pow(u, 1.0 / alpha))) / alpha; };
  // The integrand lives on a layer of width ~ m^{-alpha} at u = 0.
  const double knee = std::min(top, 40.0 * std::pow(a * m, -alpha));
  boost::math::quadrature::tanh_sinh<double> ts;
  double v = ts.integrate(f, 0.0, knee);
  if (knee < top) v += ts.integrate(f, knee, top);
  return v;
}

}  // namespace hcube::planar
