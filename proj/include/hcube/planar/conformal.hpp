#pragma once

/// \file conformal.hpp
/// \brief Conformal maps of the disk onto starlike domains by the
/// boundary-correspondence (Theodorsen) iteration.
///
/// For a domain with polar boundary R(theta), phi(e^{i psi}) = R(theta(psi)) e^{i theta(psi)}
/// and theta - psi is the harmonic conjugate of log R(theta(psi)). The iteration
/// theta <- theta + w (psi + K[log R(theta)] - theta), with K the FFT conjugation,
/// contracts when w < 2 / (1 + s^2), s the largest polar slope |d log R / d theta|.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcube/numeric.hpp"
#include "hcube/planar/domains.hpp"
#include "hcube/planar/series.hpp"

namespace hcube::planar {

/// Thrown when the boundary correspondence fails to settle.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + " after " + std::to_string(iterations) +
                           " iterations)"),
        residual_(residual),
        iterations_(iterations) {}
  [[nodiscard]] double residual() const { return residual_; }
  [[nodiscard]] int iterations() const { return iterations_; }

private:
  double residual_;
  int iterations_;
};

/// Polar log-radius evaluated on a batch of angles.
using LogRadius = std::function<void(std::span<const double> theta, std::span<double> out)>;

inline LogRadius pointwise(std::function<double(double)> f) {
  return [f = std::move(f)](std::span<const double> theta, std::span<double> out) {
    for (std::size_t j = 0; j < theta.size(); ++j) out[j] = f(theta[j]);
  };
}

struct CorrespondenceOptions {
  /// Under-relaxation factor; 0 selects min(0.5, 1 / (1 + s^2)) from the sampled polar slope s.
  double relaxation = 0.0;
  int max_iterations = 20000;
  double tolerance = 1e-10;  ///< sup-distance between successive iterates
};

/// Boundary correspondence theta(psi_j), psi_j = 2 pi j / M.
struct Correspondence {
  std::vector<double> theta;
  std::vector<double> log_radius;  ///< log R(theta_j)
  int iterations = 0;
  double residual = 0.0;
  double relaxation = 0.0;
  bool converged = false;

  [[nodiscard]] std::vector<cplx> boundary_values() const {
    std::vector<cplx> w(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) w[j] = std::exp(cplx(log_radius[j], theta[j]));
    return w;
  }
};

inline void require_grid(std::size_t M) {
  if (M < 256 || (M & (M - 1)) != 0) throw std::invalid_argument("conformal map: M must be a power of two >= 256");
}

/// Largest |d log R / d theta| from centred differences on `samples` angles.
inline double polar_slope_bound(const LogRadius& log_radius, std::size_t samples = 1 << 16) {
  const double h = 2 * kPi / static_cast<double>(samples);
  std::vector<double> th(samples + 1), v(samples + 1);
  for (std::size_t j = 0; j <= samples; ++j) th[j] = -kPi + h * static_cast<double>(j);
  log_radius(th, v);
  double s = 0;
  for (std::size_t j = 0; j < samples; ++j) s = std::max(s, std::abs(v[j + 1] - v[j]) / h);
  return s;
}

inline double default_relaxation(double slope) { return std::min(0.5, 1.0 / (1.0 + slope * slope)); }

/// Runs the relaxed fixed-point iteration. Does not throw on non-convergence; inspect `converged`.
inline Correspondence boundary_correspondence(const LogRadius& log_radius, std::size_t M,
                                              const CorrespondenceOptions& opt = {}) {
  require_grid(M);
  Correspondence out;
  out.relaxation = opt.relaxation > 0 ? opt.relaxation : default_relaxation(polar_slope_bound(log_radius));
  std::vector<double> psi(M);
  for (std::size_t j = 0; j < M; ++j) psi[j] = 2 * kPi * static_cast<double>(j) / static_cast<double>(M);
  auto& theta = out.theta;
  theta = psi;
  std::vector<double> lr(M);
  for (int it = 1; it <= opt.max_iterations; ++it) {
    log_radius(theta, lr);
    const auto conj = numeric::conjugate(lr);
    double diff = 0;
    for (std::size_t j = 0; j < M; ++j) {
      const double next = psi[j] + conj[j];
      diff = std::max(diff, std::abs(next - theta[j]));
      theta[j] += out.relaxation * (next - theta[j]);
    }
    out.iterations = it;
    out.residual = diff;
    if (!std::isfinite(diff)) break;
    if (diff < opt.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.log_radius.resize(M);
  log_radius(theta, out.log_radius);
  return out;
}

inline Correspondence boundary_correspondence(const std::function<double(double)>& log_radius, std::size_t M,
                                              const CorrespondenceOptions& opt = {}) {
  return boundary_correspondence(pointwise(log_radius), M, opt);
}

/// Taylor coefficients c_0..c_N, N = M/4, from samples on the uniform M-point circle grid.
/// The band (N, M/2) gives the truncation estimate.
inline PowerSeries series_from_boundary(const std::vector<cplx>& values, std::size_t N = 0) {
  const std::size_t M = values.size();
  if (N == 0) N = M / 4;
  const auto c = numeric::fourier_coefficients(values);
  PowerSeries s(std::vector<cplx>(c.begin(), c.begin() + static_cast<long>(N) + 1));
  double tail = 0;
  for (std::size_t n = N + 1; n < M / 2; ++n) tail += std::abs(c[n]);
  s.truncation_error = tail;
  return s;
}

/// Conformal map onto a starlike domain, phi(0) = 0, phi'(0) > 0, with M/4 coefficients.
/// Throws ConvergenceError.
inline PowerSeries starlike_map(const std::function<double(double)>& log_radius, std::size_t M,
                                const CorrespondenceOptions& opt = {}) {
  auto corr = boundary_correspondence(log_radius, M, opt);
  if (!corr.converged) throw ConvergenceError("starlike_map: no convergence", corr.residual, corr.iterations);
  return series_from_boundary(corr.boundary_values());
}

inline std::function<double(double)> lens_log_radius(double r) {
  const Lens lens(r);
  return [lens](double theta) { return std::log(lens.polar_radius(theta)); };
}

inline std::function<double(double)> twogone_log_radius(double alpha) {
  const TwoGone g(alpha);
  return [g](double theta) { return g.log_radius(theta); };
}

namespace detail {

/// Polar log-radius of L^{-1}(O_alpha), L the lens map with the same corner angle.
/// The pulled-back domain meets the unit circle tangentially at +-1. Roots are
/// found by safeguarded Newton, warm-started from the previous batch.
class PulledBackTwoGone {
public:
  explicit PulledBackTwoGone(double alpha) : lens_(lens_radius(alpha)), gone_(alpha) {}

  void operator()(std::span<const double> theta, std::span<double> out) {
    if (warm_.size() != theta.size()) warm_.assign(theta.size(), 0.5);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      warm_[j] = radius(theta[j], warm_[j]);
      out[j] = std::log(warm_[j]);
    }
  }

  /// Root rho of log|L(rho e^{i theta})| = log R(arg L(rho e^{i theta})).
  /// The domain is symmetric under conjugation and w -> -w, so theta is folded into [0, pi/2].
  [[nodiscard]] double radius(double theta, double guess) const {
    double folded = std::abs(std::remainder(theta, 2 * kPi));
    folded = std::min(folded, kPi - folded);
    const cplx dir = std::polar(1.0, folded);
    const double alpha = lens_.alpha(), c = gone_.slope();
    auto excess = [&](double rho, double* slope) {
      const cplx z = rho * dir, w = lens_.boundary_value(z);
      const double arg = std::arg(w);
      if (slope) {
        const cplx d = alpha * (1.0 - w * w) / (1.0 - z * z) * dir / w;
        const double a = std::abs(arg);
        const double ds = (a < kPi / 2 ? -c : c) * (arg < 0 ? -1.0 : 1.0);
        *slope = d.real() - ds * d.imag();
      }
      return std::log(std::abs(w)) - gone_.log_radius(arg);
    };
    if (!(excess(1.0, nullptr) > 0.0)) return 1.0;  // corner directions
    double lo = 0.0, hi = 1.0;
    double rho = guess > 0.0 && guess < 1.0 ? guess : 0.5;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
      double dq = 0;
      const double q = excess(rho, &dq);
      if (q == 0.0) return rho;
      (q < 0 ? lo : hi) = rho;
      double next = rho - q / dq;
      // Newton stalls at the kink of R; fall back to bisection there.
      if (!(next > lo && next < hi) || std::abs(q) > 0.5 * last) next = 0.5 * (lo + hi);
      last = std::abs(q);
      if (std::abs(next - rho) <= 4e-16 * rho || hi - lo <= 4e-16 * hi) return next;
      rho = next;
    }
    return rho;
  }

private:
  LensMap lens_;
  TwoGone gone_;
  std::vector<double> warm_;
};

}  // namespace detail

/// Oversampling factor used when pushing boundary values forward through the lens map.
inline constexpr std::size_t kPushForwardOversampling = 16;

/// Numeric map onto the two-gone together with its certificate.
struct TwoGoneMap {
  PowerSeries series;
  Correspondence correspondence;  ///< of the pulled-back domain
  std::vector<cplx> boundary;     ///< phi(e^{i psi_j}) on the two-gone boundary, psi_j = 2 pi j / M
  double analyticity_defect = 0;  ///< largest negative-frequency coefficient of the pulled-back map
};

/// Conformal map of the disk onto O_alpha with N = M/4 coefficients.
///
/// O_alpha is pulled back through the closed-form lens map L of the same
/// opening. The correspondence iteration runs on the pulled-back domain,
/// whose boundary is smooth at +-1; the resulting map g is resampled on a
/// 16x finer grid by zero padding and phi = L o g is transformed there, so
/// the corner singularity of phi does not alias into the returned band.
/// Throws ConvergenceError.
inline TwoGoneMap twogone_map_detailed(double alpha, std::size_t M, const CorrespondenceOptions& opt = {}) {
  require_grid(M);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("twogone_map: need alpha in (0, 1]");
  TwoGoneMap out;
  if (alpha == 1.0) {
    out.correspondence = boundary_correspondence([](double) { return 0.0; }, M, opt);
    out.boundary = out.correspondence.boundary_values();
    out.series = series_from_boundary(out.boundary);
    return out;
  }
  detail::PulledBackTwoGone pulled(alpha);
  CorrespondenceOptions o = opt;
  if (o.relaxation <= 0) o.relaxation = default_relaxation(TwoGone(alpha).slope());
  out.correspondence = boundary_correspondence(LogRadius(std::ref(pulled)), M, o);
  if (!out.correspondence.converged)
    throw ConvergenceError("twogone_map: no convergence", out.correspondence.residual, out.correspondence.iterations);

  const LensMap lens(lens_radius(alpha));
  const auto inner = out.correspondence.boundary_values();
  out.boundary.resize(M);
  for (std::size_t j = 0; j < M; ++j) out.boundary[j] = lens.boundary_value(inner[j]);
  // psi = 0, pi are the corners by symmetry; the map is Holder-alpha there, so
  // rounding in theta would be amplified to eps^alpha.
  out.boundary[0] = 1.0;
  out.boundary[M / 2] = -1.0;

  const auto G = numeric::fft(inner);
  for (std::size_t i = M / 2; i < M; ++i)
    out.analyticity_defect = std::max(out.analyticity_defect, std::abs(G[i]) / static_cast<double>(M));
  const std::size_t MF = M * kPushForwardOversampling;
  std::vector<cplx> padded(MF, cplx{});
  for (std::size_t i = 0; i < M / 2; ++i) padded[i] = G[i] * static_cast<double>(kPushForwardOversampling);
  auto fine = numeric::ifft(padded);
  for (auto& v : fine) v = lens.boundary_value(v);
  fine[0] = 1.0;
  fine[MF / 2] = -1.0;
  out.series = series_from_boundary(fine, M / 4);
  return out;
}

inline PowerSeries twogone_map(double alpha, std::size_t M, const CorrespondenceOptions& opt = {}) {
  return twogone_map_detailed(alpha, M, opt).series;
}

}  // namespace hcube::planar
