#pragma once

/// \file extremal.hpp
/// \brief Extremal ratio search over degree bands of the Walsh spectrum.
///
/// A RatioProblem asks for the max or min of ||N f||_p / ||f||_p over f with
/// spectrum supported on lo <= |S| <= hi, where N is the Laplacian, its square
/// root, or the pointwise gradient |grad f|_X. For p = 2 the answer is a
/// closed-form eigenvalue; for other p a multi-start projected gradient method
/// on the unit sphere of coefficient vectors gives a certified-feasible witness
/// (but not a certified optimum).

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hcube/cube.hpp"
#include "hcube/fit.hpp"
#include "hcube/random.hpp"

namespace hcube::extremal {

using cube::CubeFunction;
using cube::Spectrum;
using cube::SubsetMask;
using cube::ValueNorm;

enum class Numerator { laplacian, sqrt_laplacian, gradient };
enum class Direction { maximize, minimize };

inline const char* to_string(Numerator n) {
  switch (n) {
    case Numerator::laplacian: return "laplacian";
    case Numerator::sqrt_laplacian: return "sqrt_laplacian";
    case Numerator::gradient: return "gradient";
  }
  return "?";
}
inline const char* to_string(Direction d) { return d == Direction::maximize ? "maximize" : "minimize"; }

struct RatioProblem {
  Numerator numerator = Numerator::laplacian;
  double p = 2.0;
  ValueNorm xnorm{};
  int lo = 0;
  int hi = 1;
  Direction direction = Direction::maximize;
  int n = 4;
  int m = 1;

  void validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("RatioProblem: need finite p > 1");
    if (lo < 0 || hi > n || lo > hi) throw std::invalid_argument("RatioProblem: empty degree band");
    if (m < 1 || m > 4) throw std::invalid_argument("RatioProblem: value dimension must be in [1, 4]");
    if (m == 1 && n > 12) throw std::invalid_argument("RatioProblem: n <= 12 for scalar searches");
    if (m > 1 && n > 8) throw std::invalid_argument("RatioProblem: n <= 8 for vector-valued searches");
  }
};

struct RatioEstimate {
  double value = 0;
  Spectrum witness;
  int restarts = 0;
  int iterations = 0;  ///< iterations of the restart that produced `value`
  bool converged = false;
};

struct OptimizerOptions {
  int restarts = 32;
  int max_iterations = 3000;
  std::uint64_t seed = 0x5eed;
  double initial_step = 1.0;
  double min_step = 1e-12;
  double tolerance = 1e-10;  ///< relative objective change over `window` iterations
  int window = 50;
  double smoothing = 1e-9;   ///< |v|_eps = sqrt(v^2 + eps^2) inside gradients for p < 2
  unsigned threads = 0;      ///< 0 = hardware concurrency
};

/// Multiplier eigenvalue of the numerator on a degree-k character (p = 2).
inline double p2_eigenvalue(Numerator num, int k) {
  return num == Numerator::laplacian ? static_cast<double>(k) : std::sqrt(static_cast<double>(k));
}

/// Closed-form extremal constant for p = 2, scalar values.
inline double exact_p2_constant(const RatioProblem& pr) {
  pr.validate();
  if (pr.p != 2.0) throw std::invalid_argument("exact_p2_constant: p must be 2");
  if (pr.m != 1) throw std::invalid_argument("exact_p2_constant: scalar problems only");
  return p2_eigenvalue(pr.numerator, pr.direction == Direction::maximize ? pr.hi : pr.lo);
}

/// Subsets S with lo <= |S| <= hi in increasing mask order.
inline std::vector<std::uint32_t> band_subsets(int n, int lo, int hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t S = 0; S < (1U << n); ++S) {
    const int k = std::popcount(S);
    if (k >= lo && k <= hi) out.push_back(S);
  }
  return out;
}

/// ||N f||_p / ||f||_p evaluated exactly from a spectrum.
inline double ratio_value(const RatioProblem& pr, const Spectrum& s) {
  const auto f = cube::inverse_wht(s);
  const double den = cube::lp_norm(f, pr.p, pr.xnorm);
  if (den == 0) throw std::invalid_argument("ratio_value: zero function");
  double num = 0;
  switch (pr.numerator) {
    case Numerator::laplacian: num = cube::lp_norm(cube::laplacian(f), pr.p, pr.xnorm); break;
    case Numerator::sqrt_laplacian: num = cube::lp_norm(cube::sqrt_laplacian(f), pr.p, pr.xnorm); break;
    case Numerator::gradient: num = cube::lp_norm(cube::gradient_field(f, pr.xnorm), pr.p); break;
  }
  return num / den;
}

namespace detail {

/// d|v|_X / dv for v in R^m (a subgradient at kinks).
inline void norm_gradient(const double* v, int m, double q, double norm, double* out) {
  if (m == 1) {
    out[0] = norm > 0 ? v[0] / norm : 0.0;
    return;
  }
  if (norm == 0) {
    std::fill(out, out + m, 0.0);
    return;
  }
  if (std::isinf(q)) {
    int arg = 0;
    for (int i = 1; i < m; ++i)
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    std::fill(out, out + m, 0.0);
    out[arg] = v[arg] >= 0 ? 1.0 : -1.0;
    return;
  }
  if (q == 1.0) {
    for (int i = 0; i < m; ++i) out[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
    return;
  }
  if (q == 2.0) {
    for (int i = 0; i < m; ++i) out[i] = v[i] / norm;
    return;
  }
  for (int i = 0; i < m; ++i)
    out[i] = std::pow(std::abs(v[i]) / norm, q - 1.0) * (v[i] >= 0 ? 1.0 : -1.0);
}

/// Objective log(||N f||_p / ||f||_p) and its gradient in band coefficients.
class RatioObjective {
public:
  RatioObjective(const RatioProblem& pr, const std::vector<std::uint32_t>& band, double eps)
      : pr_(pr), band_(band), eps_(pr.p < 2.0 ? eps : 0.0), pts_(std::size_t{1} << pr.n) {}

  /// Returns the smoothed objective; fills `grad` (size band * m) if non-null.
  double evaluate(const std::vector<double>& c, std::vector<double>* grad) {
    const int n = pr_.n, m = pr_.m;
    const double p = pr_.p;
    scatter(c, f_, [](int) { return 1.0; });
    cube::detail::fwht_inplace(f_, n, m);

    double A = 0, B = 0;
    // Denominator E|f|^p and weights.
    wden_.assign(f_.size(), 0.0);
    accumulate_linear(f_, wden_, B, grad != nullptr);

    if (pr_.numerator == Numerator::gradient) {
      A = gradient_term(grad != nullptr);
    } else {
      const bool lap = pr_.numerator == Numerator::laplacian;
      scatter(c, g_, [lap](int k) { return lap ? static_cast<double>(k) : std::sqrt(static_cast<double>(k)); });
      cube::detail::fwht_inplace(g_, n, m);
      wnum_.assign(g_.size(), 0.0);
      accumulate_linear(g_, wnum_, A, grad != nullptr);
    }
    if (!(A > 0) || !(B > 0)) {
      if (grad) grad->assign(c.size(), 0.0);
      return -std::numeric_limits<double>::infinity();
    }
    const double value = (std::log(A) - std::log(B)) / p;
    if (!grad) return value;

    grad->assign(c.size(), 0.0);
    const double inv_pts = 1.0 / static_cast<double>(pts_);
    cube::detail::fwht_inplace(wden_, n, m);
    if (pr_.numerator != Numerator::gradient) cube::detail::fwht_inplace(wnum_, n, m);
    for (std::size_t b = 0; b < band_.size(); ++b) {
      const std::uint32_t S = band_[b];
      const int k = std::popcount(S);
      const double lam = pr_.numerator == Numerator::laplacian ? k : std::sqrt(static_cast<double>(k));
      for (int i = 0; i < m; ++i) {
        const std::size_t at = std::size_t{S} * m + i;
        const double dB = p * wden_[at] * inv_pts;
        double dA;
        if (pr_.numerator == Numerator::gradient)
          dA = p * gsum_[at] * inv_pts;
        else
          dA = p * lam * wnum_[at] * inv_pts;
        (*grad)[b * m + i] = (dA / A - dB / B) / p;
      }
    }
    return value;
  }

private:
  template <class L>
  void scatter(const std::vector<double>& c, std::vector<double>& out, L&& lambda) {
    const int m = pr_.m;
    out.assign(pts_ * m, 0.0);
    for (std::size_t b = 0; b < band_.size(); ++b) {
      const double lam = lambda(std::popcount(band_[b]));
      for (int i = 0; i < m; ++i) out[std::size_t{band_[b]} * m + i] = lam * c[b * m + i];
    }
  }

  /// E|v|_X^p into `moment`; w = |v|^{p-1} d|v| per point when requested.
  void accumulate_linear(const std::vector<double>& v, std::vector<double>& w, double& moment, bool want) {
    const int m = pr_.m;
    const double p = pr_.p;
    std::vector<double> u(m);
    double acc = 0;
    for (std::size_t x = 0; x < pts_; ++x) {
      const double* vx = v.data() + x * m;
      const double a = pr_.xnorm(std::span<const double>(vx, m));
      const double ae = eps_ > 0 ? std::sqrt(a * a + eps_ * eps_) : a;
      acc += std::pow(ae, p);
      if (want && ae > 0) {
        norm_gradient(vx, m, pr_.xnorm.q, ae, u.data());
        const double s = std::pow(ae, p - 1.0);
        for (int i = 0; i < m; ++i) w[x * m + i] = s * u[i];
      }
    }
    moment = acc / static_cast<double>(pts_);
  }

  /// E G^p for G = |grad f|_X, with gsum_[S, i] = sum_{j in S} WHT(G^{p-2} |D_j f| u_j)(S) scaled by 2^n.
  double gradient_term(bool want) {
    const int n = pr_.n, m = pr_.m;
    const double p = pr_.p;
    d_.assign(static_cast<std::size_t>(n) * pts_ * m, 0.0);
    dn_.assign(static_cast<std::size_t>(n) * pts_, 0.0);
    std::vector<double> G2(pts_, 0.0);
    for (int j = 0; j < n; ++j) {
      const std::size_t flip = std::size_t{1} << j;
      for (std::size_t x = 0; x < pts_; ++x) {
        double* dst = d_.data() + (j * pts_ + x) * m;
        for (int i = 0; i < m; ++i) dst[i] = 0.5 * (f_[x * m + i] - f_[(x ^ flip) * m + i]);
        const double a = pr_.xnorm(std::span<const double>(dst, m));
        dn_[j * pts_ + x] = a;
        G2[x] += a * a;
      }
    }
    double acc = 0;
    std::vector<double> Gpm2(pts_);
    for (std::size_t x = 0; x < pts_; ++x) {
      const double ge2 = G2[x] + eps_ * eps_;
      acc += std::pow(ge2, 0.5 * p);
      Gpm2[x] = ge2 > 0 ? std::pow(ge2, 0.5 * p - 1.0) : 0.0;
    }
    if (want) {
      gsum_.assign(pts_ * m, 0.0);
      std::vector<double> h(pts_ * m), u(m);
      for (int j = 0; j < n; ++j) {
        for (std::size_t x = 0; x < pts_; ++x) {
          const double* v = d_.data() + (j * pts_ + x) * m;
          const double a = dn_[j * pts_ + x];
          norm_gradient(v, m, pr_.xnorm.q, a, u.data());
          for (int i = 0; i < m; ++i) h[x * m + i] = Gpm2[x] * a * u[i];
        }
        cube::detail::fwht_inplace(h, n, m);
        for (std::uint32_t S : band_)
          if ((S >> j) & 1U)
            for (int i = 0; i < m; ++i) gsum_[std::size_t{S} * m + i] += h[std::size_t{S} * m + i];
      }
    }
    return acc / static_cast<double>(pts_);
  }

  const RatioProblem& pr_;
  const std::vector<std::uint32_t>& band_;
  double eps_;
  std::size_t pts_;
  std::vector<double> f_, g_, wden_, wnum_, d_, dn_, gsum_;
};

struct RestartResult {
  std::vector<double> coeffs;
  double objective = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

inline void normalize(std::vector<double>& c) {
  double s = 0;
  for (double v : c) s += v * v;
  s = std::sqrt(s);
  if (s > 0)
    for (double& v : c) v /= s;
}

inline RestartResult run_restart(const RatioProblem& pr, const std::vector<std::uint32_t>& band,
                                 const OptimizerOptions& opt, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  RatioObjective obj(pr, band, opt.smoothing);
  const double sign = pr.direction == Direction::maximize ? 1.0 : -1.0;
  const std::size_t dim = band.size() * pr.m;

  RestartResult res;
  res.coeffs = normal_vector(rng, dim);
  normalize(res.coeffs);
  std::vector<double> grad, trial(dim), tgrad(dim);
  double cur = sign * obj.evaluate(res.coeffs, &grad);
  if (!std::isfinite(cur)) {
    res.objective = cur;
    res.converged = true;
    return res;
  }
  std::vector<double> history{cur};
  for (int it = 1; it <= opt.max_iterations; ++it) {
    res.iterations = it;
    double radial = 0;
    for (std::size_t i = 0; i < dim; ++i) radial += grad[i] * res.coeffs[i];
    double gnorm = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      tgrad[i] = sign * (grad[i] - radial * res.coeffs[i]);
      gnorm += tgrad[i] * tgrad[i];
    }
    if (std::sqrt(gnorm) < 1e-14) {
      res.converged = true;
      break;
    }
    double step = opt.initial_step, next = cur;
    bool improved = false;
    while (step >= opt.min_step) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = res.coeffs[i] + step * tgrad[i];
      normalize(trial);
      next = sign * obj.evaluate(trial, nullptr);
      if (next > cur) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      res.converged = true;  // no ascent direction at machine resolution
      break;
    }
    res.coeffs.swap(trial);
    cur = sign * obj.evaluate(res.coeffs, &grad);
    history.push_back(cur);
    const std::size_t h = history.size();
    if (h > static_cast<std::size_t>(opt.window)) {
      const double old = history[h - 1 - opt.window];
      if (std::abs(cur - old) <= opt.tolerance * std::max(1.0, std::abs(cur))) {
        res.converged = true;
        break;
      }
    }
  }
  res.objective = cur;
  return res;
}

}  // namespace detail

/// Multi-start projected gradient search. Restart r uses seed
/// derive_seed(options.seed, r); the reported estimate is the best restart
/// (first index on ties), its value recomputed with exact norms.
inline RatioEstimate optimize_ratio(const RatioProblem& pr, const OptimizerOptions& opt = {}) {
  pr.validate();
  if (opt.restarts < 1) throw std::invalid_argument("optimize_ratio: need at least one restart");
  const auto band = band_subsets(pr.n, pr.lo, pr.hi);
  std::vector<detail::RestartResult> results(opt.restarts);

  unsigned workers = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(opt.restarts));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < opt.restarts; r = next++)
      results[r] = detail::run_restart(pr, band, opt, derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  int best = 0;
  for (int r = 1; r < opt.restarts; ++r)
    if (results[r].objective > results[best].objective) best = r;

  RatioEstimate est;
  est.restarts = opt.restarts;
  est.iterations = results[best].iterations;
  est.converged = results[best].converged;
  est.witness = Spectrum(pr.n, pr.m);
  for (std::size_t b = 0; b < band.size(); ++b)
    for (int i = 0; i < pr.m; ++i) est.witness.raw()[std::size_t{band[b]} * pr.m + i] = results[best].coeffs[b * pr.m + i];
  est.value = ratio_value(pr, est.witness);
  return est;
}

/// Interpolation inequality ||Delta^beta f||_p <= 4 ||Delta f||_p^beta ||f||_p^{1-beta}.
struct FlpResult {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

inline FlpResult flp_interpolation_check(const CubeFunction& f, double beta, double p) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("flp_interpolation_check: beta in (0, 1]");
  if (!(p >= 1.0)) throw std::invalid_argument("flp_interpolation_check: p >= 1");
  FlpResult r;
  r.lhs = cube::lp_norm(cube::laplacian_power(f, beta), p);
  const double lap = cube::lp_norm(cube::laplacian(f), p);
  r.rhs = 4.0 * std::pow(lap, beta) * std::pow(cube::lp_norm(f, p), 1.0 - beta);
  r.holds = r.lhs <= r.rhs * (1 + 1e-12);
  return r;
}

/// (||Delta^{1/2} f||_p / || |grad f| ||_p, its inverse) for scalar f.
inline std::pair<double, double> riesz_comparison(const CubeFunction& f, double p) {
  if (!f.is_scalar()) throw std::invalid_argument("riesz_comparison: scalar f required");
  const double g = cube::lp_norm(cube::gradient_field(f), p);
  if (g == 0) throw std::invalid_argument("riesz_comparison: gradient vanishes identically");
  const double r = cube::lp_norm(cube::sqrt_laplacian(f), p) / g;
  return {r, 1.0 / r};
}

/// Exponent laws of d predicted by the theory.
enum class ExponentLaw {
  gradient_markov,   ///< || |grad f| ||_p <= C d^e ||f||_p on P_d
  green_beta,        ///< beta(p) = 2 - (2/pi) arcsin(2 sqrt(p-1)/p)
};

inline double predicted_exponent(ExponentLaw law, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("predicted_exponent: p must exceed 1");
  const double a = std::asin(std::min(1.0, 2.0 * std::sqrt(p - 1.0) / p));
  switch (law) {
    case ExponentLaw::gradient_markov:
      return p >= 2.0 ? 1.0 - a / std::numbers::pi : 2.0 / p - 2.0 * a / (p * std::numbers::pi);
    case ExponentLaw::green_beta: return 2.0 - 2.0 * a / std::numbers::pi;
  }
  return 0;
}

inline ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) { return fit_power_law(points); }

/// Smallest C with value <= C d^e at every point.
inline double consistency_constant(const std::vector<std::pair<double, double>>& points, double exponent) {
  double c = 0;
  for (const auto& [d, v] : points) c = std::max(c, v / std::pow(d, exponent));
  return c;
}

}  // namespace hcube::extremal
