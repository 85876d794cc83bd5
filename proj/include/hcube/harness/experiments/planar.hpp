#pragma once

/// \file planar.hpp
/// \brief Conformal maps, coefficient decay, the paraproduct bound and Green's functions.

#include <cmath>
#include <numbers>

#include "hcube/fit.hpp"
#include "hcube/harness/experiments/common.hpp"
#include "hcube/planar.hpp"

namespace hcube::harness::experiments {

namespace detail {

inline constexpr double kPi = std::numbers::pi;

inline double max_coefficient_gap(const planar::PowerSeries& a, const planar::PowerSeries& b) {
  double w = 0;
  for (std::size_t n = 0; n < std::max(a.size(), b.size()); ++n) w = std::max(w, std::abs(a[n] - b[n]));
  return w;
}

template <class G>
double circle_mean(const G& g, planar::cplx centre, double radius, int points = 64) {
  double acc = 0;
  for (int i = 0; i < points; ++i) acc += g(centre + std::polar(radius, 2 * kPi * i / points));
  return acc / points;
}

}  // namespace detail

inline void add_planar(Registry& reg) {
  reg.add({
      .id = "lens-coefficients",
      .module = "planar",
      .anchor = "Taylor coefficients of the lens map decay like n^{-(1+alpha)}; m^alpha int_0^2 (1+y)^{-m} y^{alpha-1} dy "
                "stays bounded; |phi'(x)| against (1 - x^2)^{alpha-1} reported along the radius",
      .params = {reals_param("alpha", "1/3, 1/2, 2/3", 0.05, 0.95, "corner parameters"),
                 integer_param("N", "4096", 128, 1 << 20, "series length and upper fit bound"),
                 integer_param("fit_lo", "64", 2, 1 << 20, "lower fit bound"),
                 real_param("slope_tolerance", "0.05", 0, 1, "allowed slope error"),
                 integer_param("m_min", "8", 2, 1 << 20, "smallest m for the integral"),
                 integer_param("m_max", "2048", 2, 1 << 20, "largest m for the integral"),
                 real_param("spread", "2", 1, 1e6, "allowed max/min of m^alpha times the integral")},
      .claims = {"slope", "integral-bounded", "integral-table", "radial-derivative"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const auto N = static_cast<std::size_t>(cfg.integer("N"));
            const auto lo = static_cast<std::size_t>(cfg.integer("fit_lo"));
            if (lo >= N) throw ConfigError("fit_lo must be below N");
            const auto ms = doubling(static_cast<double>(cfg.integer("m_min")), static_cast<double>(cfg.integer("m_max")));
            for (double alpha : cfg.reals("alpha")) {
              const auto fit = planar::coeff_asymptotics_check(planar::lens_series(alpha, N), alpha, lo, N);
              sink.equal("slope", Params().add("alpha", alpha).add("lo", lo).add("hi", N), fit->slope, -(1 + alpha),
                         cfg.real("slope_tolerance"));
              Spread spread;
              for (auto [m, v] : planar::coeff_bound_sweep(alpha, ms)) {
                sink.report("integral-table", Params().add("alpha", alpha).add("m", m), v, std::tgamma(alpha));
                spread.add(v);
              }
              sink.at_most("integral-bounded", Params().add("alpha", alpha), spread.ratio(), cfg.real("spread"));
              const double limit = 4 * alpha * std::pow(2.0, -2 * alpha);
              for (auto [x, v] : planar::radial_derivative_ratios(planar::lens_map(planar::lens_radius(alpha)),
                                                                  {0.9, 0.99, 0.9999, 1 - 1e-8}))
                sink.report("radial-derivative", Params().add("alpha", alpha).add("x", x), v, limit);
            }
          },
  });

  reg.add({
      .id = "twogone-map",
      .module = "planar",
      .anchor = "the conformal map onto the two-gone O_alpha has coefficients of order n^{-(1+alpha)}; "
                "the numerical mapping reproduces the closed-form lens map",
      .params = {reals_param("alpha", "1/3, 1/2, 2/3", 0.05, 0.95, "corner parameters"),
                 integer_param("M", "16384", 256, 1 << 20, "boundary grid for the two-gone"),
                 integer_param("M_lens", "4096", 256, 1 << 20, "boundary grid for the lens oracle"),
                 integer_param("fit_lo", "64", 2, 1 << 20, "lower fit bound"),
                 real_param("slope_tolerance", "0.1", 0, 1, "allowed slope error"),
                 real_param("oracle_tolerance", "1e-4", 0, 1, "allowed coefficient gap to the lens closed form")},
      .claims = {"lens-oracle", "converged", "slope", "odd-symmetry", "boundary", "interior"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const auto M = static_cast<std::size_t>(cfg.integer("M"));
            const auto M_lens = static_cast<std::size_t>(cfg.integer("M_lens"));
            for (double alpha : cfg.reals("alpha")) {
              const auto numeric_lens = planar::starlike_map(planar::lens_log_radius(planar::lens_radius(alpha)), M_lens);
              const auto exact = planar::lens_series(alpha, numeric_lens.size() - 1);
              sink.equal("lens-oracle", Params().add("alpha", alpha).add("M", M_lens),
                         detail::max_coefficient_gap(numeric_lens, exact), 0, cfg.real("oracle_tolerance"));

              const auto tg = planar::twogone_map_detailed(alpha, M);
              const auto p = Params().add("alpha", alpha).add("M", M);
              sink.equal("converged", Params(p).add("residual", tg.correspondence.residual),
                         tg.correspondence.converged ? 1.0 : 0.0, 1.0, 0);
              const auto N = tg.series.size() - 1;
              const auto fit =
                  planar::coeff_asymptotics_check(tg.series, alpha, static_cast<std::size_t>(cfg.integer("fit_lo")), N);
              sink.equal("slope", Params(p).add("hi", N), fit->slope, -(1 + alpha), cfg.real("slope_tolerance"));
              double even = tg.series.imaginary_defect();
              for (std::size_t n = 0; n < tg.series.size(); n += 2) even = std::max(even, std::abs(tg.series.coeffs[n]));
              sink.equal("odd-symmetry", p, even, 0, 1e-12);

              const planar::TwoGone gone(alpha);
              double boundary = 0;
              for (const auto& w : tg.boundary)
                boundary = std::max(boundary, std::abs(std::abs(w) - gone.polar_radius(std::arg(w))));
              sink.equal("boundary", p, boundary, 0, 1e-6);
              long outside = 0;
              for (double rho : {0.5, 0.9, 0.99})
                for (int j = 0; j < 64; ++j) outside += !gone.contains(tg.series(std::polar(rho, 2 * detail::kPi * j / 64)));
              sink.equal("interior", p, static_cast<double>(outside), 0, 0);
            }
          },
  });

  reg.add({
      .id = "paraproduct-bound",
      .module = "planar",
      .anchor = "||T_phi z^d||_inf <= sum_m m |c_m| / (d + m - 1) <= C_alpha d^{-alpha} for the corner map phi",
      .params = {reals_param("alpha", "1/3, 1/2, 2/3", 0.05, 0.95, "corner parameters"),
                 integer_param("N", "131072", 4096, 1 << 22, "lens series length"),
                 integer_param("N_synthetic", "8192", 256, 1 << 22, "power-law series length"),
                 integer_param("d_min", "2", 1, 1 << 20, "smallest degree"),
                 integer_param("d_max", "2048", 2, 1 << 20, "largest degree"),
                 integers_param("spot", "2, 16, 128, 1024", 1, 1 << 16, "degrees for sup-norm spot checks"),
                 integer_param("N_spot", "8192", 256, 1 << 20, "series length for spot checks"),
                 real_param("spread", "5", 1, 1e6, "allowed max/min of d^alpha times the bound")},
      .claims = {"lens-bound", "lens-uniform", "synthetic-uniform", "spot-sup", "spot-below-bound"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const auto ds = doubling(static_cast<double>(cfg.integer("d_min")), static_cast<double>(cfg.integer("d_max")));
            for (double alpha : cfg.reals("alpha")) {
              const auto lens = planar::lens_series(alpha, static_cast<std::size_t>(cfg.integer("N")));
              const auto synthetic = planar::power_law_series(alpha, static_cast<std::size_t>(cfg.integer("N_synthetic")));
              Spread a, b;
              for (double d : ds) {
                const auto tb = planar::paraproduct_tail_bound(lens, static_cast<std::size_t>(d));
                const double v = std::pow(d, alpha) * tb.value;
                sink.report("lens-bound", Params().add("alpha", alpha).add("d", d).add("uncertainty", tb.uncertainty), v);
                a.add(v);
                b.add(std::pow(d, alpha) * planar::paraproduct_tail_bound(synthetic, static_cast<std::size_t>(d)).value);
              }
              sink.at_most("lens-uniform", Params().add("alpha", alpha), a.ratio(), cfg.real("spread"));
              sink.at_most("synthetic-uniform", Params().add("alpha", alpha), b.ratio(), cfg.real("spread"));

              const auto phi = planar::lens_series(alpha, static_cast<std::size_t>(cfg.integer("N_spot")));
              for (int d : cfg.integers("spot")) {
                const auto t = planar::paraproduct_apply(planar::monomial(static_cast<std::size_t>(d)), phi);
                double direct = 0;  // the coefficients are nonnegative, so the sup is attained at z = 1
                for (const auto& c : t.coeffs) direct += std::abs(c);
                const double sampled = planar::circle_sup(t);
                const auto p = Params().add("alpha", alpha).add("d", d);
                sink.equal("spot-sup", p, sampled / direct, 1.0, 0.01);
                sink.at_most("spot-below-bound", p,
                             sampled / planar::paraproduct_tail_bound(phi, static_cast<std::size_t>(d)).value, 1.01);
              }
            }
          },
  });

  reg.add({
      .id = "green-segment",
      .module = "planar",
      .anchor = "Green's function of the complement of [-1 + 1/d^2, 1 - 1/d^2] satisfies G_d(1) ~ sqrt 2 / d",
      .params = {integer_param("d_min", "64", 2, 1 << 20, "smallest degree"),
                 integer_param("d_max", "4096", 2, 1 << 20, "largest degree"),
                 integer_param("d_asymptotic", "512", 2, 1 << 20, "degrees from here on are held to the 1% limit"),
                 real_param("half_length", "0.7", 0.01, 0.999, "segment for the Robin and harmonicity checks")},
      .claims = {"limit", "table", "robin", "vanishes", "harmonic"},
      .body =
          [](const Config& cfg, Sink& sink) {
            for (double d : doubling(static_cast<double>(cfg.integer("d_min")), static_cast<double>(cfg.integer("d_max")))) {
              const double v = d * planar::green_segment_for_degree(d)(1.0);
              sink.report("table", Params().add("d", d), v, std::sqrt(2.0));
              if (d >= static_cast<double>(cfg.integer("d_asymptotic")))
                sink.equal("limit", Params().add("d", d), v / std::sqrt(2.0), 1.0, 0.01);
            }
            const double c = cfg.real("half_length");
            const auto g = planar::green_segment(c);
            // G(z) = ln|z| + ln(2/c) + o(1) at infinity.
            for (planar::cplx z : {planar::cplx(1e7, 0), planar::cplx(0, -1e7), planar::cplx(-7e6, 7e6)})
              sink.equal("robin", Params().add("c", c).add("arg", std::arg(z)), g(z) - std::log(std::abs(z)),
                         std::log(2 / c), 1e-9);
            for (double x : {-0.5, 0.0, 0.5})
              for (double side : {1.0, -1.0})
                sink.at_most("vanishes", Params().add("c", c).add("x", x * c).add("side", side),
                             g(planar::cplx(x * c, side * 1e-12)), 1e-11);
            for (planar::cplx z : {planar::cplx(1.2, 0), planar::cplx(0, 0.5), planar::cplx(-0.3, -0.2), planar::cplx(3, 4)})
              sink.equal("harmonic", Params().add("c", c).add("re", z.real()).add("im", z.imag()),
                         detail::circle_mean(g, z, 0.05), g(z), 1e-8);
          },
  });

  reg.add({
      .id = "green-lens",
      .module = "planar",
      .anchor = "G of the exterior of the lens (1 - d^{-beta}) Omega(r), r = p / (2 sqrt(p-1)), decays at 1 like "
                "d^{-beta pi / (2 pi - 2 arcsin(2 sqrt(p-1)/p))}; beta = 2 - alpha gives G(1) ~ 1/d",
      .params = {reals_param("p", "3, 4", 2.0001, 1e6, "exponents fixing the lens"),
                 integer_param("d_min", "16", 2, 1 << 20, "fit range start"),
                 integer_param("d_max", "2048", 4, 1 << 20, "fit range end"),
                 real_param("slope_tolerance", "0.02", 0, 1, "relative slope tolerance"),
                 integer_param("balance_min", "4", 2, 1 << 20, "balanced sweep start"),
                 integer_param("balance_max", "512", 4, 1 << 20, "balanced sweep end"),
                 real_param("spread", "4", 1, 1e6, "allowed max/min of d G(1) in the balanced sweep")},
      .claims = {"exponent-formula", "slope", "balanced-table", "balanced-bounded", "vanishes"},
      .body =
          [](const Config& cfg, Sink& sink) {
            for (double p : cfg.reals("p")) {
              const double r = planar::lens_radius_for_exponent(p), alpha = planar::lens_alpha(r);
              for (double beta : {1.0, planar::balancing_beta(alpha)}) {
                const double target = planar::lens_green_exponent(alpha, beta);
                const double formula =
                    -beta * detail::kPi / (2 * detail::kPi - 2 * std::asin(2 * std::sqrt(p - 1) / p));
                const auto pb = Params().add("p", p).add("beta", beta);
                sink.equal("exponent-formula", pb, target, formula, 1e-12);
                std::vector<std::pair<double, double>> pts;
                for (double d : doubling(static_cast<double>(cfg.integer("d_min")), static_cast<double>(cfg.integer("d_max"))))
                  pts.emplace_back(d, planar::green_lens_exterior(r, planar::lens_scale(d, beta))(1.0));
                sink.equal("slope", Params(pb).add("target", target), fit_power_law(pts).slope / target, 1.0,
                           cfg.real("slope_tolerance"));
              }
              const double beta = planar::balancing_beta(alpha);
              Spread spread;
              for (double d : doubling(static_cast<double>(cfg.integer("balance_min")),
                                       static_cast<double>(cfg.integer("balance_max")))) {
                const double v = d * planar::green_lens_exterior(r, planar::lens_scale(d, beta))(1.0);
                sink.report("balanced-table", Params().add("p", p).add("d", d), v);
                spread.add(v);
              }
              sink.at_most("balanced-bounded", Params().add("p", p).add("beta", beta), spread.ratio(), cfg.real("spread"));

              const auto g = planar::green_lens_exterior(r, 0.9);
              double worst = 0;
              for (int j = 0; j < 200; ++j) {
                const double th = detail::kPi * (2.0 * j / 200 - 1) + 1e-3;
                worst = std::max(worst, std::abs(g(std::polar(g.lens().polar_radius(th), th))));
              }
              sink.at_most("vanishes", Params().add("p", p).add("scale", 0.9), worst, 1e-10);
            }
          },
  });

  reg.add({
      .id = "spiral-inclusion",
      .module = "planar",
      .anchor = "the spiral arc of O_alpha leaving the corner 1 stays inside the upper arc circle of the lens on (0, a/4], "
                "with margin (2c + 1/3) t^3 + O(t^4), c = pi^2 / (6 a^2); sampled arc points lie in the lens",
      .params = {reals_param("alpha", "1/3, 1/2, 2/3", 0.05, 0.95, "corner parameters"),
                 integer_param("grid", "4000", 10, 10000000, "points on the arc"),
                 real_param("cubic_tolerance", "0.05", 0, 1, "relative tolerance on the cubic coefficient")},
      .claims = {"margin-positive", "cubic", "on-boundary", "lens-inclusion"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const int grid = static_cast<int>(cfg.integer("grid"));
            for (double alpha : cfg.reals("alpha")) {
              const double a = planar::spiral_parameter(alpha);
              const auto rep = planar::spiral_curve_check(alpha, a / 4, grid);
              const auto p = Params().add("alpha", alpha).add("t_max", a / 4);
              sink.at_least("margin-positive", Params(p).add("worst_t", rep.worst_t), rep.worst_margin,
                            std::numeric_limits<double>::min());
              const double c = detail::kPi * detail::kPi / (6 * a * a);
              sink.equal("cubic", Params(p).add("predicted", 2 * c + 1.0 / 3), rep.cubic_coefficient / (2 * c + 1.0 / 3),
                         1.0, cfg.real("cubic_tolerance"));
              sink.equal("on-boundary", p, rep.boundary_defect, 0, 1e-12);
              const auto half = planar::spiral_curve_check(alpha, a / 2, grid);
              sink.at_least("lens-inclusion", Params().add("alpha", alpha).add("t_max", a / 2), half.lens_margin, 0.0);
            }
          },
  });
}

}  // namespace hcube::harness::experiments
