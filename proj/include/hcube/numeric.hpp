#pragma once

/// \file numeric.hpp
/// \brief FFT and composite Gauss-Legendre helpers shared by the analytic modules.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/FFT>

namespace hcube::numeric {

using cplx = std::complex<double>;

/// Forward DFT X[m] = sum_j x[j] e^{-2 pi i j m / M}.
inline std::vector<cplx> fft(const std::vector<cplx>& x) {
  Eigen::FFT<double> engine;
  std::vector<cplx> out;
  engine.fwd(out, x);
  return out;
}

/// Inverse DFT with the 1/M factor: x[j] = (1/M) sum_m X[m] e^{2 pi i j m / M}.
inline std::vector<cplx> ifft(const std::vector<cplx>& X) {
  Eigen::FFT<double> engine;
  std::vector<cplx> out;
  engine.inv(out, X);
  return out;
}

/// Fourier coefficients c_m = (1/M) sum_j x[j] e^{-i m psi_j} of samples on the
/// uniform grid psi_j = 2 pi j / M; index m is stored at position m mod M.
inline std::vector<cplx> fourier_coefficients(const std::vector<cplx>& samples) {
  auto c = fft(samples);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto& v : c) v *= inv;
  return c;
}

/// Signed frequency of FFT slot i for length M.
inline long frequency(std::size_t i, std::size_t M) {
  return i < (M + 1) / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(M);
}

/// Harmonic conjugate of a real periodic sequence: multiplier -i sgn(m).
inline std::vector<double> conjugate(const std::vector<double>& u) {
  const std::size_t M = u.size();
  std::vector<cplx> U(u.begin(), u.end());
  U = fft(U);
  for (std::size_t i = 0; i < M; ++i) {
    const long m = frequency(i, M);
    if (m == 0 || (M % 2 == 0 && i == M / 2))
      U[i] = 0;
    else
      U[i] *= cplx(0, m > 0 ? -1.0 : 1.0);
  }
  auto back = ifft(U);
  std::vector<double> out(M);
  for (std::size_t i = 0; i < M; ++i) out[i] = back[i].real();
  return out;
}

/// Composite 20-point Gauss-Legendre over [a, b] split at the sorted
/// breakpoints, each piece divided into `panels` equal panels.
template <class F>
auto integrate(F&& f, double a, double b, std::vector<double> breaks = {}, int panels = 1) {
  using R = decltype(f(a));
  if (!(b > a)) throw std::invalid_argument("integrate: need a < b");
  if (panels < 1) throw std::invalid_argument("integrate: need at least one panel");
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  R total{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
    if (!(hi > lo)) continue;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double x0 = lo + p * h;
      total += boost::math::quadrature::gauss<double, 20>::integrate(f, x0, x0 + h);
    }
  }
  return total;
}

/// Nodes and weights of the composite rule used by integrate().
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  auto apply(F&& f) const {
    using R = decltype(f(nodes[0]));
    R acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

inline QuadratureRule composite_rule(double a, double b, std::vector<double> breaks = {}, int panels = 1) {
  using G = boost::math::quadrature::gauss<double, 20>;
  if (!(b > a)) throw std::invalid_argument("composite_rule: need a < b");
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const auto& abs = G::abscissa();
  const auto& wts = G::weights();
  QuadratureRule rule;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
    if (!(hi > lo)) continue;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * h, half = 0.5 * h;
      for (std::size_t j = 0; j < abs.size(); ++j) {
        // 20 points: abscissae are the positive half, each used with both signs.
        rule.nodes.push_back(mid - half * abs[j]);
        rule.weights.push_back(half * wts[j]);
        rule.nodes.push_back(mid + half * abs[j]);
        rule.weights.push_back(half * wts[j]);
      }
    }
  }
  return rule;
}

}  // namespace hcube::numeric
