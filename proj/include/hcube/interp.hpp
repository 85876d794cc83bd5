#pragma once

/// \file interp.hpp
/// \brief An L^1 kernel on the circle with prescribed tail Fourier coefficients.
///
/// The sawtooth S(x) = sum_{j>=1} sin(jx)/j has exponential coefficients
/// 1/(2im). Subtracting a trigonometric interpolant L of degree < k and
/// setting s = 2i (S - L) gives s^(m) = 1/m for every |m| >= k, while the
/// residual S - L alternates sign between the nodes, so its L^1 norm is a
/// pairing with a square wave and is of order 1/k.
///
/// Norms and pairings use the normalized measure dx / 2 pi on (-pi, pi].

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hcube/numeric.hpp"

namespace hcube::interp {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Reduces x to (-pi, pi].
inline double wrap(double x) {
  double y = std::remainder(x, 2 * kPi);
  if (y <= -kPi) y += 2 * kPi;
  return y;
}

/// S(x) = (sign(x) pi - x) / 2 on (-pi, pi], periodic, with S(0) = S(pi) = 0.
inline double sawtooth(double x) {
  const double y = wrap(x);
  if (y == 0.0 || y == kPi) return 0.0;
  return ((y > 0 ? kPi : -kPi) - y) / 2;
}

/// Exponential Fourier coefficient of the sawtooth: 1/(2im), zero at m = 0.
inline cplx sawtooth_coefficient(long m) { return m == 0 ? cplx{} : 1.0 / cplx(0, 2.0 * m); }

/// Triangular cosine: even, 2 pi-periodic, linear on [0, pi], c(0) = 1, c(pi) = -1.
inline double triangular_cos(double x) { return 1.0 - 2.0 * std::abs(wrap(x)) / kPi; }

/// Derivative c'(x): -2/pi on (0, pi), +2/pi on (-pi, 0); right limit at kinks.
inline double square_wave(double x) {
  const double y = wrap(x);
  if (y == kPi) return 2.0 / kPi;  // right limit at pi lies in (-pi, 0)
  return y >= 0 ? -2.0 / kPi : 2.0 / kPi;
}

/// Trigonometric polynomial sum_{|m| <= N} c_m e^{imx}.
class TrigPoly {
public:
  TrigPoly() : coeffs_(1, 0.0) {}
  explicit TrigPoly(int degree) : degree_(degree), coeffs_(2 * degree + 1, 0.0) {
    if (degree < 0) throw std::invalid_argument("TrigPoly: negative degree");
  }

  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] cplx coefficient(long m) const {
    return std::abs(m) > degree_ ? cplx{} : coeffs_[static_cast<std::size_t>(m + degree_)];
  }
  cplx& operator[](long m) { return coeffs_.at(static_cast<std::size_t>(m + degree_)); }

  [[nodiscard]] cplx operator()(double x) const {
    cplx acc = 0;
    for (int m = -degree_; m <= degree_; ++m) acc += coeffs_[m + degree_] * std::polar(1.0, m * x);
    return acc;
  }

  /// Coefficients for |m| <= degree from samples of a degree-bounded function
  /// at M >= 2 degree + 2 uniform points.
  template <class F>
  static TrigPoly from_function(F&& fn, int degree, std::size_t M = 0) {
    if (M == 0) M = 4 * static_cast<std::size_t>(degree + 1);
    if (M < static_cast<std::size_t>(2 * degree + 2)) throw std::invalid_argument("TrigPoly: too few samples");
    std::vector<cplx> samples(M);
    for (std::size_t j = 0; j < M; ++j) samples[j] = fn(2 * kPi * j / M);
    auto c = numeric::fourier_coefficients(samples);
    TrigPoly p(degree);
    for (int m = -degree; m <= degree; ++m) p[m] = c[(m + static_cast<long>(M)) % M];
    return p;
  }

  /// Distance from the real odd polynomials (c_{-m} = -c_m, all c_m imaginary).
  [[nodiscard]] double odd_real_defect() const {
    double d = std::abs(coefficient(0));
    for (int m = 1; m <= degree_; ++m)
      d = std::max({d, std::abs(coefficient(-m) + coefficient(m)), std::abs(coefficient(m).real())});
    return d;
  }

private:
  int degree_ = 0;
  std::vector<cplx> coeffs_;
};

inline void require_even(int k) {
  if (k < 2 || k % 2) throw std::invalid_argument("interp: k must be an even integer >= 2");
}

/// Interpolant of S at x_r = pi r / (k + 1), r odd in [-k+1, k-1], written as a
/// polynomial of degree k - 1 in sin x (barycentric form in s = sin x).
class LagrangeInterpolant {
public:
  explicit LagrangeInterpolant(int k) : k_(k) {
    require_even(k);
    for (int r = -k + 1; r <= k - 1; r += 2) {
      nodes_.push_back(kPi * r / (k + 1));
      s_.push_back(std::sin(nodes_.back()));
      values_.push_back(sawtooth(nodes_.back()));
    }
    weights_.assign(s_.size(), 1.0);
    for (std::size_t a = 0; a < s_.size(); ++a)
      for (std::size_t b = 0; b < s_.size(); ++b)
        if (a != b) {
          const double diff = s_[a] - s_[b];
          if (std::abs(diff) < 1e-14) throw std::logic_error("LagrangeInterpolant: node collision");
          weights_[a] /= diff;
        }
  }

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }

  [[nodiscard]] double operator()(double x) const {
    const double s = std::sin(x);
    double num = 0, den = 0;
    for (std::size_t a = 0; a < s_.size(); ++a) {
      const double d = s - s_[a];
      if (d == 0) return values_[a];
      const double w = weights_[a] / d;
      num += w * values_[a];
      den += w;
    }
    return num / den;
  }

  /// Exponential-basis coefficients (support in [-k+1, k-1]).
  [[nodiscard]] TrigPoly trig_poly(std::size_t samples = 0) const {
    return TrigPoly::from_function([this](double x) { return cplx((*this)(x)); }, k_ - 1, samples);
  }

private:
  int k_;
  std::vector<double> nodes_, s_, values_, weights_;
};

/// Sine polynomial sum_{m=1}^{k-1} b_m sin(mx) interpolating S at x_j = j pi / k,
/// j = 1..k-1 (and, by oddness, at 0, pi and -x_j). Computed by a discrete sine
/// transform.
class SineInterpolant {
public:
  explicit SineInterpolant(int k) : k_(k), b_(k > 1 ? k - 1 : 0) {
    require_even(k);
    for (int m = 1; m < k; ++m) {
      double acc = 0;
      for (int j = 1; j < k; ++j) acc += sawtooth(j * kPi / k) * std::sin(m * j * kPi / k);
      b_[m - 1] = 2.0 * acc / k;
    }
  }

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] const std::vector<double>& sine_coefficients() const noexcept { return b_; }

  [[nodiscard]] double operator()(double x) const {
    // sin((m+1)x) = 2 cos x sin(mx) - sin((m-1)x)
    const double c2 = 2 * std::cos(x);
    double prev = 0, cur = std::sin(x), acc = 0;
    for (int m = 1; m < k_; ++m) {
      acc += b_[m - 1] * cur;
      const double next = c2 * cur - prev;
      prev = cur;
      cur = next;
    }
    return acc;
  }

  [[nodiscard]] TrigPoly trig_poly() const {
    TrigPoly p(k_ - 1);
    for (int m = 1; m < k_; ++m) {
      p[m] = b_[m - 1] / cplx(0, 2);
      p[-m] = -b_[m - 1] / cplx(0, 2);
    }
    return p;
  }

  /// Zeros of S - L on [0, pi].
  [[nodiscard]] std::vector<double> nodes() const {
    std::vector<double> x;
    for (int j = 0; j <= k_; ++j) x.push_back(j * kPi / k_);
    return x;
  }

private:
  int k_;
  std::vector<double> b_;
};

/// s = 2i (S - L) with L the sine interpolant of degree k - 1. Integrals use
/// a composite Gauss rule with 16 panels per node interval, built once.
class KernelS {
public:
  explicit KernelS(int k) : interp_(k) {
    std::vector<double> br;
    for (int j = -k; j <= k; ++j) br.push_back(j * kPi / k);
    rule_ = numeric::composite_rule(-kPi, kPi, br, 16);
    samples_.resize(rule_.nodes.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] = residual(rule_.nodes[i]);
  }

  [[nodiscard]] int k() const noexcept { return interp_.k(); }
  [[nodiscard]] const SineInterpolant& interpolant() const noexcept { return interp_; }

  /// Real residual S(x) - L(x); s(x) = 2i times this.
  [[nodiscard]] double residual(double x) const { return sawtooth(x) - interp_(x); }
  [[nodiscard]] cplx operator()(double x) const { return cplx(0, 2.0 * residual(x)); }

  /// Breakpoints on [-pi, pi]: the zeros j pi / k of the residual (S jumps at 0).
  [[nodiscard]] std::vector<double> breakpoints() const {
    std::vector<double> b;
    for (int j = -k(); j <= k(); ++j) b.push_back(j * kPi / k());
    return b;
  }

  /// s^(m) = (1/2pi) int s(x) e^{-imx} dx. Accurate for |m| up to about 16k.
  [[nodiscard]] cplx coefficient(long m) const {
    cplx acc = 0;
    for (std::size_t i = 0; i < samples_.size(); ++i)
      acc += rule_.weights[i] * samples_[i] * std::polar(1.0, -static_cast<double>(m) * rule_.nodes[i]);
    return cplx(0, 2.0) * acc / (2 * kPi);
  }

  /// s^(m) for m = lo..hi, sharing the phase recurrence across m.
  [[nodiscard]] std::vector<cplx> coefficients(long lo, long hi) const {
    if (hi < lo) return {};
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const double x = rule_.nodes[i];
      const cplx step = std::polar(1.0, -x);
      cplx phase = std::polar(rule_.weights[i] * samples_[i], -static_cast<double>(lo) * x);
      for (auto& c : out) {
        c += phase;
        phase *= step;
      }
    }
    for (auto& c : out) c *= cplx(0, 2.0) / (2 * kPi);
    return out;
  }

  /// ||s||_1 = (1/2pi) int |s|.
  [[nodiscard]] double l1_norm() const {
    double acc = 0;
    for (std::size_t i = 0; i < samples_.size(); ++i) acc += rule_.weights[i] * std::abs(samples_[i]);
    return 2.0 * acc / (2 * kPi);
  }

  /// (s * h)(theta) = (1/2pi) int s(phi) h(theta - phi) dphi.
  template <class H>
  [[nodiscard]] cplx convolve(H&& h, double theta) const {
    cplx acc = 0;
    for (std::size_t i = 0; i < samples_.size(); ++i)
      acc += rule_.weights[i] * samples_[i] * h(theta - rule_.nodes[i]);
    return cplx(0, 2.0) * acc / (2 * kPi);
  }

private:
  SineInterpolant interp_;
  numeric::QuadratureRule rule_;
  std::vector<double> samples_;
};

/// Exact (1/2pi) int S(x) sgn(sin kx) dx by integrating the linear pieces of S.
inline double sawtooth_square_wave_pairing(int k) {
  auto prim = [](double x) { return kPi * x / 2 - x * x / 4; };  // antiderivative of (pi - x)/2
  double acc = 0;
  for (int j = 0; j < k; ++j) {
    const double a = j * kPi / k, b = (j + 1) * kPi / k;
    acc += (j % 2 ? -1.0 : 1.0) * (prim(b) - prim(a));
  }
  return acc / kPi;  // both factors odd: (1/2pi) int_{-pi}^{pi} = (1/pi) int_0^pi
}

/// The dual witness sgn(sin kx) = -(pi/2) c'(kx).
inline double dual_square_wave(int k, double x) { return -kPi / 2 * square_wave(k * x); }

struct DualityReport {
  int k = 0;
  double residual_l1 = 0;        ///< ||S - L||_1 by quadrature
  double pairing = 0;            ///< <S, sgn sin kx> by exact piecewise integration
  double interpolant_pairing = 0;  ///< <L, sgn sin kx> by quadrature (0 in exact arithmetic)
  double worst_sign_violation = 0;  ///< max over the grid of -(S - L) sgn(sin kx), clipped at 0
  bool sign_alternation = false;
};

/// Compares ||S - L||_1 with <S, sgn(sin kx)> and checks that S - L has the
/// sign of sin(kx) on a grid of `grid` points of (0, pi) (odd symmetry covers (-pi, 0)).
inline DualityReport duality_identity_check(int k, int grid = 10000) {
  KernelS s(k);
  DualityReport r;
  r.k = k;
  r.residual_l1 = s.l1_norm() / 2.0;
  r.pairing = sawtooth_square_wave_pairing(k);
  const auto& L = s.interpolant();
  r.interpolant_pairing =
      numeric::integrate([&](double x) { return L(x) * dual_square_wave(k, x); }, -kPi, kPi, s.breakpoints(), 8) /
      (2 * kPi);
  const double scale = 1e-13;
  for (int i = 1; i < grid; ++i) {
    const double x = kPi * i / grid;
    const double w = std::sin(k * x);
    if (std::abs(w) < 1e-12) continue;  // grid point on a node
    const double v = -s.residual(x) * (w > 0 ? 1.0 : -1.0);
    r.worst_sign_violation = std::max(r.worst_sign_violation, v);
  }
  r.sign_alternation = r.worst_sign_violation <= scale;
  return r;
}

/// ||S - L_lit||_1 for the interpolant at the odd nodes pi r/(k+1).
inline double lagrange_residual_l1(int k) {
  LagrangeInterpolant L(k);
  std::vector<double> br;
  for (double x : L.nodes()) br.push_back(x);
  br.push_back(0.0);
  return numeric::integrate([&](double x) { return std::abs(sawtooth(x) - L(x)); }, -kPi, kPi, br, 8) / (2 * kPi);
}

/// Max over a theta grid of |(s * zeta^{m+1})(e^{i theta}) - e^{i(m+1) theta}/(m+1)|:
/// convolution with s after multiplication by zeta integrates z^m from 0.
inline double integration_via_kernel_check(int k, int m, int thetas = 16) {
  if (m < k) throw std::invalid_argument("integration_via_kernel_check: degree below the kernel tail");
  KernelS s(k);
  double worst = 0;
  for (int i = 0; i < thetas; ++i) {
    const double theta = 2 * kPi * i / thetas + 0.1;
    const cplx conv = s.convolve([m](double phi) { return std::polar(1.0, (m + 1) * phi); }, theta);
    worst = std::max(worst, std::abs(conv - std::polar(1.0 / (m + 1), (m + 1) * theta)));
  }
  return worst;
}

}  // namespace hcube::interp
