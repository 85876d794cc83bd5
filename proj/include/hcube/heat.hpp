#pragma once

/// \file heat.hpp
/// \brief Probabilistic side of the heat semigroup e^{-t Delta} on the cube.
///
/// xi_j(t) are independent signs with P(xi = +1) = (1 + e^{-t}) / 2. With
/// x = e^{-t} and s = (1 - x^2)^{1/2}:
///   centered      delta_j  = (xi_j - x) / s
///   symmetrized   delta'_j = (xi_j - xi'_j) / s,  xi' an independent copy.
/// Every expectation below is an exact weighted enumeration.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "hcube/cube.hpp"

namespace hcube::heat {

using cube::CubeFunction;
using cube::ValueNorm;

namespace detail {

inline void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("heat: t must be positive and finite");
}

}  // namespace detail

/// The biased sign xi(t).
struct BiasedSign {
  double t;

  explicit BiasedSign(double time) : t(time) { detail::require_positive_time(t); }

  [[nodiscard]] double x() const noexcept { return std::exp(-t); }
  [[nodiscard]] double p_plus() const noexcept { return 0.5 * (1.0 + x()); }
  [[nodiscard]] double p_minus() const noexcept { return 0.5 * (1.0 - x()); }
  [[nodiscard]] double mean() const noexcept { return x(); }
  /// 1 - e^{-2t}, computed without cancellation for small t.
  [[nodiscard]] double variance() const noexcept { return -std::expm1(-2.0 * t); }
  [[nodiscard]] double scale() const noexcept { return std::sqrt(variance()); }
};

enum class DeltaKind { centered, symmetrized };

/// One atom of a finitely supported law.
struct Atom {
  double value;
  double probability;
};

/// Exact law of delta_j(t) (two atoms) or delta'_j(t) (three atoms).
inline std::vector<Atom> delta_law(DeltaKind kind, double t) {
  const BiasedSign xi(t);
  const double x = xi.x(), s = xi.scale();
  if (kind == DeltaKind::centered)
    return {{(1.0 - x) / s, xi.p_plus()}, {(-1.0 - x) / s, xi.p_minus()}};
  const double q = xi.p_plus() * xi.p_minus();
  return {{0.0, 1.0 - 2.0 * q}, {2.0 / s, q}, {-2.0 / s, q}};
}

/// Signed raw moment E[delta^m].
inline double delta_moment(DeltaKind kind, double t, int m) {
  detail::require_positive_time(t);
  if (m < 1) throw std::invalid_argument("delta_moment: order must be >= 1");
  if (kind == DeltaKind::symmetrized) {
    if (m % 2) return 0.0;
    const double v = BiasedSign(t).variance();
    return std::ldexp(std::pow(v, 1.0 - 0.5 * m), m - 1);
  }
  double acc = 0;
  for (const auto& a : delta_law(kind, t)) acc += a.probability * std::pow(a.value, m);
  return acc;
}

/// Absolute moment E|delta|^m. For the symmetrized kind this is
/// 2^{m-1} (1 - e^{-2t})^{1 - m/2} for every m >= 1.
inline double delta_abs_moment(DeltaKind kind, double t, int m) {
  detail::require_positive_time(t);
  if (m < 1) throw std::invalid_argument("delta_abs_moment: order must be >= 1");
  if (kind == DeltaKind::symmetrized) {
    const double v = BiasedSign(t).variance();
    return std::ldexp(std::pow(v, 1.0 - 0.5 * m), m - 1);
  }
  double acc = 0;
  for (const auto& a : delta_law(kind, t)) acc += a.probability * std::pow(std::abs(a.value), m);
  return acc;
}

/// The upper bound 2^{m-1} / (1 - e^{-2t})^{(m-2)/2} used for the moments.
inline double delta_moment_bound(double t, int m) {
  const double v = BiasedSign(t).variance();
  return std::ldexp(1.0, m - 1) / std::pow(std::sqrt(v), m - 2);
}

/// Right-hand side of the representation
///   D_j e^{-t Delta} f(eps) = (x / s) E_xi[ delta_j(t) f(eps * xi) ],
/// by enumeration of all 2^n outcomes of xi.
inline CubeFunction gradient_representation_rhs(const CubeFunction& f, double t, int j) {
  const BiasedSign xi(t);
  const int n = f.n(), m = f.m();
  if (n > 12) throw std::invalid_argument("gradient_representation: n must be <= 12");
  if (j < 0 || j >= n) throw std::invalid_argument("gradient_representation: coordinate out of range");
  const double x = xi.x(), s = xi.scale();
  const double log_pp = std::log(xi.p_plus()), log_pm = std::log(xi.p_minus());
  const std::size_t pts = f.points();

  std::vector<double> weight(pts);
  for (std::uint32_t y = 0; y < pts; ++y) {
    const int flips = std::popcount(y);
    const double delta = ((y >> j) & 1U) ? (-1.0 - x) / s : (1.0 - x) / s;
    weight[y] = std::exp((n - flips) * log_pp + flips * log_pm) * delta;
  }
  std::vector<double> out(pts * m, 0.0);
  for (std::uint32_t e = 0; e < pts; ++e) {
    double* dst = out.data() + std::size_t{e} * m;
    for (std::uint32_t y = 0; y < pts; ++y) {
      auto v = f.at(e ^ y);
      for (int c = 0; c < m; ++c) dst[c] += weight[y] * v[c];
    }
    for (int c = 0; c < m; ++c) dst[c] *= x / s;
  }
  return CubeFunction(n, m, std::move(out));
}

/// sup_eps |D_j heat(f, e^{-t}) - RHS| (componentwise max for vector values).
inline double gradient_representation_check(const CubeFunction& f, double t, int j) {
  const auto rhs = gradient_representation_rhs(f, t, j);
  const auto lhs = cube::partial_d(cube::heat(f, std::exp(-t)), j);
  double worst = 0;
  for (std::size_t i = 0; i < lhs.values().size(); ++i)
    worst = std::max(worst, std::abs(lhs.values()[i] - rhs.values()[i]));
  return worst;
}

/// The integral of P{|xi - xi'| > s}^{1/u} over s >= 0, which equals
/// 2^{1 - 1/u} (1 - e^{-2t})^{1/u}.
inline double mp_integral(double t, double u) {
  detail::require_positive_time(t);
  if (!(u >= 1.0)) throw std::invalid_argument("mp_integral: exponent must be >= 1");
  const double v = BiasedSign(t).variance();
  if (std::isinf(u)) return 2.0;
  return 2.0 * std::pow(0.5 * v, 1.0 / u);
}

/// (a + b)^Q <= 6 a^Q + Q^Q b^Q, evaluated in log space.
inline bool aplusb_check(double a, double b, double Q) {
  if (!(a >= 0) || !(b >= 0) || !(Q >= 2)) throw std::invalid_argument("aplusb_check: need a, b >= 0, Q >= 2");
  if (a + b == 0) return true;
  const double ninf = -std::numeric_limits<double>::infinity();
  const double lhs = Q * std::log(a + b);
  const double r1 = a > 0 ? std::log(6.0) + Q * std::log(a) : ninf;
  const double r2 = b > 0 ? Q * std::log(Q) + Q * std::log(b) : ninf;
  const double hi = std::max(r1, r2);
  const double rhs = hi + std::log1p(std::exp(std::min(r1, r2) - hi));
  return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

struct ContractionReport {
  double worst_ratio = 0;
  double worst_x = 0;
  std::vector<double> ratios;  ///< one per grid point
};

/// Ratio of || |grad heat(f, x)| ||_p to |x| (1 - x^2)^{-e} ||f||_p over a grid,
/// with e = 1/2 for p >= 2 and e = 1/p for 1 < p < 2. The ratio is 0 when the
/// left side vanishes.
inline ContractionReport contraction_inequality_check(const CubeFunction& f, double p, std::span<const double> grid) {
  if (!f.is_scalar()) throw std::invalid_argument("contraction_inequality_check: scalar f required");
  if (!(p > 1.0)) throw std::invalid_argument("contraction_inequality_check: p must exceed 1");
  if (grid.empty()) throw std::invalid_argument("contraction_inequality_check: empty grid");
  const double e = p >= 2.0 ? 0.5 : 1.0 / p;
  const double fnorm = cube::lp_norm(f, p);
  ContractionReport rep;
  rep.ratios.reserve(grid.size());
  for (double x : grid) {
    if (!(std::abs(x) < 1.0)) throw std::invalid_argument("contraction_inequality_check: grid must lie in (-1, 1)");
    const double lhs = cube::lp_norm(cube::gradient_field(cube::heat(f, x)), p);
    double ratio = 0;
    if (lhs > 0) ratio = lhs / (std::abs(x) / std::pow(1.0 - x * x, e) * fnorm);
    rep.ratios.push_back(ratio);
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_x = x;
    }
  }
  return rep;
}

/// Uniform grid of `count` points on [-1 + margin, 1 - margin].
inline std::vector<double> open_interval_grid(int count, double margin = 0.025) {
  if (count < 2) throw std::invalid_argument("open_interval_grid: need >= 2 points");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = -1.0 + margin + (2.0 - 2.0 * margin) * i / (count - 1);
  return g;
}

/// Inputs and outputs of the moment chain bounding E||sum lambda_j delta_j||^q.
struct RosenthalReport {
  double B_centered = 0;      ///< (E||sum lambda_j delta_j||^q)^{1/q}
  double B_symmetrized = 0;   ///< (E||sum lambda_j delta'_j||^q)^{1/q}
  double E_exact = 0;         ///< E (sum |delta'_j|^2 ||lambda_j||^2)^{q/2}
  double E_bound = 0;         ///< the displayed Rosenthal-type bound on E_exact
  double observed_constant = 0;  ///< B_centered * (1 - e^{-2t})^{1/2 - 1/q}
};

/// Exact evaluation of the chain for lambda_j in R^m normed by `xstar`,
/// q an even integer. lambda must be a unit vector of l^2_n(X*).
inline RosenthalReport rosenthal_chain_check(double t, int q, const std::vector<std::vector<double>>& lambda,
                                             const ValueNorm& xstar = {}) {
  const BiasedSign xi(t);
  const int n = static_cast<int>(lambda.size());
  if (n < 1 || n > 5) throw std::invalid_argument("rosenthal_chain_check: need 1 <= n <= 5");
  if (q < 2 || q % 2) throw std::invalid_argument("rosenthal_chain_check: q must be an even integer >= 2");
  const std::size_t m = lambda[0].size();
  std::vector<double> lnorm(n);
  double total = 0;
  for (int j = 0; j < n; ++j) {
    if (lambda[j].size() != m || m == 0) throw std::invalid_argument("rosenthal_chain_check: ragged lambda");
    lnorm[j] = xstar(std::span<const double>(lambda[j]));
    total += lnorm[j] * lnorm[j];
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("rosenthal_chain_check: lambda must have unit norm");

  const auto centered = delta_law(DeltaKind::centered, t);
  const auto symmetric = delta_law(DeltaKind::symmetrized, t);
  std::vector<double> acc(m);

  // Mixed-radix enumeration over the product law.
  auto enumerate = [&](const std::vector<Atom>& law, auto&& visit) {
    const int base = static_cast<int>(law.size());
    std::vector<int> idx(n, 0);
    while (true) {
      double prob = 1;
      for (int j = 0; j < n; ++j) prob *= law[idx[j]].probability;
      visit(idx, prob);
      int j = 0;
      while (j < n && ++idx[j] == base) idx[j++] = 0;
      if (j == n) break;
    }
  };
  auto moment = [&](const std::vector<Atom>& law) {
    double sum = 0;
    enumerate(law, [&](const std::vector<int>& idx, double prob) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int j = 0; j < n; ++j)
        for (std::size_t c = 0; c < m; ++c) acc[c] += lambda[j][c] * law[idx[j]].value;
      sum += prob * std::pow(xstar(std::span<const double>(acc)), q);
    });
    return sum;
  };

  RosenthalReport rep;
  rep.B_centered = std::pow(moment(centered), 1.0 / q);
  rep.B_symmetrized = std::pow(moment(symmetric), 1.0 / q);

  const int k = q / 2;
  enumerate(symmetric, [&](const std::vector<int>& idx, double prob) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += symmetric[idx[j]].value * symmetric[idx[j]].value * lnorm[j] * lnorm[j];
    rep.E_exact += prob * std::pow(s, k);
  });

  const double sd = xi.scale();
  double bound = std::pow(24.0, k) * std::pow(total, k);
  for (int l = 0; l <= k - 2; ++l) {
    double tail = 0;
    for (int j = 0; j < n; ++j) tail += std::pow(lnorm[j], 2 * k - 2 * l);
    bound += std::pow(24.0, k) * std::pow(k - l, k - l) / std::pow(sd, 2 * k - 2 * l - 2) * tail * std::pow(total, l);
  }
  rep.E_bound = bound;
  rep.observed_constant = rep.B_centered * std::pow(xi.variance(), 0.5 - 1.0 / q);
  return rep;
}

}  // namespace hcube::heat
