#pragma once

/// \file paraproduct.hpp
/// \brief The analytic paraproduct T_phi g = int_0^z g phi' and the coefficient
/// bound sum_m m |c_m| / (d + m - 1) for g with a zero of order d at 0.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "hcube/fit.hpp"
#include "hcube/planar/series.hpp"

namespace hcube::planar {

/// Taylor coefficients of T_phi g: Cauchy product g * phi', then division by the index.
inline PowerSeries paraproduct_apply(const PowerSeries& g, const PowerSeries& phi) {
  if (g.size() == 0 || phi.size() < 2) return PowerSeries(std::vector<cplx>(1, cplx{}));
  const std::size_t dg = g.size() - 1, dp = phi.size() - 2;  // degree of g and of phi'
  std::vector<cplx> prod(dg + dp + 1, cplx{});
  for (std::size_t i = 0; i <= dg; ++i) {
    if (g.coeffs[i] == cplx{}) continue;
    for (std::size_t j = 0; j <= dp; ++j) prod[i + j] += g.coeffs[i] * (static_cast<double>(j + 1) * phi.coeffs[j + 1]);
  }
  std::vector<cplx> out(prod.size() + 1, cplx{});
  for (std::size_t k = 0; k < prod.size(); ++k) out[k + 1] = prod[k] / static_cast<double>(k + 1);
  return PowerSeries(std::move(out));
}

/// Raised when the modelled remainder is too uncertain to trust.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct TailBound {
  double value = 0;        ///< partial + remainder
  double partial = 0;      ///< sum over m <= terms
  double remainder = 0;    ///< modelled sum over m > terms
  double uncertainty = 0;  ///< spread of the remainder between two fit windows
  std::size_t terms = 0;
  ExponentFit decay;  ///< |c_m| fit on the top window
};

namespace detail {

/// Remainder sum_{m > K} density A m^{1 - gamma} / (d + m - 1), by the integral from K + 1/2.
inline double modelled_remainder(const ExponentFit& fit, double density, double K, double d) {
  const double A = std::exp(fit.intercept), e = fit.slope;  // |c_m| ~ A m^e, e < -1
  if (!(e < -1.0)) throw TruncationError("paraproduct_tail_bound: coefficients do not decay fast enough");
  boost::math::quadrature::exp_sinh<double> es;
  const double x0 = K + 0.5;
  // Substituting x = x0 (1 + y) keeps the integrand O(1).
  auto f = [&](double y) {
    const double x = x0 * (1.0 + y);
    return std::pow(1.0 + y, 1.0 + e) / (d - 1.0 + x);
  };
  return density * A * std::pow(x0, 2.0 + e) * es.integrate(f);
}

inline std::pair<ExponentFit, double> window_fit(const PowerSeries& phi, std::size_t lo, std::size_t hi) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t m = lo; m <= hi; ++m) {
    const double a = std::abs(phi.coeffs[m]);
    if (a > kCoefficientFloor) pts.emplace_back(static_cast<double>(m), a);
  }
  const double density = static_cast<double>(pts.size()) / static_cast<double>(hi - lo + 1);
  return {fit_power_law(pts), density};
}

}  // namespace detail

/// sum_{m >= 1} m |c_m| / (d + m - 1) for the series of phi.
///
/// Terms are summed exactly up to K = N (at least 4d, and the caller should supply
/// N >= 64 d when the coefficients are available); beyond K the coefficients
/// follow the power law fitted on [K/2, K] (with the fraction of nonzero
/// coefficients as density) and the sum is replaced by an integral. The same
/// remainder computed from the window [K/4, K/2] gives the uncertainty, which
/// must stay below 1% of the total, otherwise TruncationError is thrown.
inline TailBound paraproduct_tail_bound(const PowerSeries& phi, std::size_t d) {
  if (d < 1) throw std::invalid_argument("paraproduct_tail_bound: need d >= 1");
  if (phi.size() < 4 * d + 1) throw std::invalid_argument("paraproduct_tail_bound: need N >= 4d");
  TailBound out;
  out.terms = phi.size() - 1;
  const double dd = static_cast<double>(d);
  for (std::size_t m = 1; m <= out.terms; ++m)
    out.partial += static_cast<double>(m) * std::abs(phi.coeffs[m]) / (dd + static_cast<double>(m) - 1.0);

  const std::size_t K = out.terms;
  bool any_tail = false;
  for (std::size_t m = K / 2; m <= K; ++m) any_tail = any_tail || std::abs(phi.coeffs[m]) > kCoefficientFloor;
  if (!any_tail || K < 16) {
    out.value = out.partial;  // polynomial phi: nothing beyond the floor
    return out;
  }
  auto [top, density_top] = detail::window_fit(phi, K / 2, K);
  auto [low, density_low] = detail::window_fit(phi, K / 4, K / 2);
  out.decay = top;
  out.remainder = detail::modelled_remainder(top, density_top, static_cast<double>(K), dd);
  const double alt = detail::modelled_remainder(low, density_low, static_cast<double>(K), dd);
  out.uncertainty = std::abs(out.remainder - alt);
  out.value = out.partial + out.remainder;
  if (out.uncertainty > 0.01 * out.value)
    throw TruncationError("paraproduct_tail_bound: remainder uncertainty " + std::to_string(out.uncertainty) +
                          " exceeds 1% of " + std::to_string(out.value));
  return out;
}

/// Series with |c_m| = m^{-1-alpha} for 1 <= m <= N.
inline PowerSeries power_law_series(double alpha, std::size_t N) {
  std::vector<cplx> c(N + 1, cplx{});
  for (std::size_t m = 1; m <= N; ++m) c[m] = std::pow(static_cast<double>(m), -1.0 - alpha);
  return PowerSeries(std::move(c));
}

/// z^d as a series.
inline PowerSeries monomial(std::size_t d) {
  std::vector<cplx> c(d + 1, cplx{});
  c[d] = 1.0;
  return PowerSeries(std::move(c));
}

/// Sup of |series| over an M-point circle grid, M the next power of two >= 4 size.
inline double circle_sup(const PowerSeries& s) {
  std::size_t M = 1;
  while (M < 4 * s.size()) M <<= 1;
  double best = 0;
  for (const auto& v : s.sample_circle(M)) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace hcube::planar
