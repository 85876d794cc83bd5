#pragma once

/// \file extremal.hpp
/// \brief Extremal ratio searches, the interpolation inequality and exponent tables.

#include <cmath>

#include "hcube/extremal.hpp"
#include "hcube/harness/experiments/common.hpp"
#include "hcube/random.hpp"

namespace hcube::harness::experiments {

namespace detail {

inline extremal::RatioProblem ratio_problem(extremal::Numerator num, double p, int lo, int hi,
                                            extremal::Direction dir, int n) {
  extremal::RatioProblem pr;
  pr.numerator = num;
  pr.p = p;
  pr.lo = lo;
  pr.hi = hi;
  pr.direction = dir;
  pr.n = n;
  return pr;
}

inline extremal::OptimizerOptions optimizer_options(const Config& cfg, std::uint64_t stream) {
  extremal::OptimizerOptions o;
  o.restarts = static_cast<int>(cfg.integer("restarts"));
  o.seed = derive_seed(cfg.seed(), stream);
  o.threads = 1;
  return o;
}

}  // namespace detail

inline void add_extremal(Registry& reg) {
  using extremal::Direction;
  using extremal::Numerator;

  reg.add({
      .id = "extremal-p2",
      .module = "extremal",
      .anchor = "at p = 2: min over tail space T_d of ||Delta f||/||f|| = d + 1; max over P_d of || |grad f| ||/||f|| = sqrt d",
      .params = {integers_param("n", "6, 10", 2, 12, "dimensions"),
                 integer_param("d_max", "6", 1, 11, "largest degree"),
                 integer_param("restarts", "4", 1, 256, "optimizer restarts"),
                 real_param("tolerance", "1e-3", 0, 1, "relative tolerance against the exact constant")},
      .claims = {"tail-minimum", "gradient-maximum", "oracle-dominance"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const double tol = cfg.real("tolerance");
            std::uint64_t stream = 0;
            for (int n : cfg.integers("n"))
              for (int d = 1; d <= cfg.integer("d_max"); ++d) {
                if (d + 1 <= n) {
                  const auto pr = detail::ratio_problem(Numerator::laplacian, 2, d + 1, n, Direction::minimize, n);
                  const auto est = extremal::optimize_ratio(pr, detail::optimizer_options(cfg, stream++));
                  const double exact = extremal::exact_p2_constant(pr);
                  const auto p = Params().add("n", n).add("d", d).add("exact", exact);
                  sink.equal("tail-minimum", p, est.value / exact, 1.0, tol);
                  // The optimizer can never beat the exact constant: overshoot past it must be <= 0.
                  sink.at_most("oracle-dominance", Params(p).add("problem", "tail-minimum"), exact - est.value, 0, 1e-9);
                }
                if (d <= n) {
                  const auto pr = detail::ratio_problem(Numerator::gradient, 2, 0, d, Direction::maximize, n);
                  const auto est = extremal::optimize_ratio(pr, detail::optimizer_options(cfg, stream++));
                  const double exact = extremal::exact_p2_constant(pr);
                  const auto p = Params().add("n", n).add("d", d).add("exact", exact);
                  sink.equal("gradient-maximum", p, est.value / exact, 1.0, tol);
                  sink.at_most("oracle-dominance", Params(p).add("problem", "gradient-maximum"), est.value - exact, 0, 1e-9);
                }
              }
          },
  });

  reg.add({
      .id = "flp-interpolation",
      .module = "extremal",
      .anchor = "||Delta^beta f||_p <= 4 ||Delta f||_p^beta ||f||_p^{1-beta} for 0 < beta < 1",
      .params = {integer_param("n", "8", 1, 14, "dimension"),
                 integer_param("trials", "10", 1, 10000, "random functions"),
                 reals_param("beta", "0.25, 0.5, 0.75", 1e-3, 1, "interpolation exponents"),
                 reals_param("p", "1.5, 2, 4", 1, kInf, "exponents")},
      .claims = {"inequality", "endpoint"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n = static_cast<int>(cfg.integer("n"));
            const auto& betas = cfg.reals("beta");
            const auto& ps = cfg.reals("p");
            std::vector<double> worst(betas.size() * ps.size(), 0.0);
            double endpoint = 0;
            for (long k = 0; k < cfg.integer("trials"); ++k) {
              const auto f = cube::random_function(n, rng);
              for (std::size_t b = 0; b < betas.size(); ++b)
                for (std::size_t i = 0; i < ps.size(); ++i) {
                  const auto r = extremal::flp_interpolation_check(f, betas[b], ps[i]);
                  worst[b * ps.size() + i] = std::max(worst[b * ps.size() + i], r.lhs / r.rhs);
                }
              const auto one = extremal::flp_interpolation_check(f, 1.0, 2.0);
              endpoint = std::max(endpoint, std::abs(one.lhs / one.rhs - 0.25));
            }
            for (std::size_t b = 0; b < betas.size(); ++b)
              for (std::size_t i = 0; i < ps.size(); ++i)
                sink.at_most("inequality", Params().add("n", n).add("beta", betas[b]).add("p", ps[i]),
                             worst[b * ps.size() + i], 1.0);
            sink.equal("endpoint", Params().add("n", n).add("beta", 1.0), endpoint, 0, 1e-12);
          },
  });

  reg.add({
      .id = "exponent-consistency",
      .module = "extremal",
      .anchor = "|| |grad f| ||_p <= C d^{e(p)} ||f||_p on P_d, e(p) = 1 - arcsin(2 sqrt(p-1)/p)/pi for p >= 2; "
                "||Delta f||_p >= c d^a ||f||_p on tail spaces (fits reported, sharpness not asserted)",
      .params = {integer_param("n", "8", 2, 10, "dimension"),
                 reals_param("p", "3, 4", 1.01, 64, "exponents"),
                 integer_param("d_max", "6", 2, 10, "largest degree"),
                 integer_param("restarts", "4", 1, 256, "optimizer restarts")},
      .claims = {"exact-fit", "character-witness", "gradient-table", "gradient-fit", "tail-table", "tail-fit",
                 "tail-band", "narrow-band"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const int n = static_cast<int>(cfg.integer("n"));
            const int d_max = std::min<int>(static_cast<int>(cfg.integer("d_max")), n - 1);
            std::vector<std::pair<double, double>> exact;
            for (int d = 1; d <= d_max; ++d) exact.emplace_back(d, std::sqrt(static_cast<double>(d)));
            sink.equal("exact-fit", Params().add("p", 2.0), extremal::fit_exponent(exact).slope,
                       extremal::predicted_exponent(extremal::ExponentLaw::gradient_markov, 2), 1e-9);
            std::uint64_t stream = 100;
            for (double p : cfg.reals("p")) {
              const double e = extremal::predicted_exponent(extremal::ExponentLaw::gradient_markov, p);
              std::vector<std::pair<double, double>> grad, tail;
              for (int d = 1; d <= d_max; ++d) {
                const auto gp = detail::ratio_problem(Numerator::gradient, p, 0, d, Direction::maximize, n);
                const auto g = extremal::optimize_ratio(gp, detail::optimizer_options(cfg, stream++));
                grad.emplace_back(d, g.value);
                sink.report("gradient-table", Params().add("p", p).add("d", d).add("n", n), g.value, e);
                // eps_1 lies in P_d with gradient ratio exactly 1.
                sink.at_least("character-witness", Params().add("p", p).add("d", d), g.value, 1.0, 1e-12);

                const auto tp = detail::ratio_problem(Numerator::laplacian, p, d + 1, n, Direction::minimize, n);
                const auto t = extremal::optimize_ratio(tp, detail::optimizer_options(cfg, stream++));
                tail.emplace_back(d, t.value);
                sink.report("tail-table", Params().add("p", p).add("d", d).add("n", n), t.value);
              }
              const auto gf = extremal::fit_exponent(grad);
              sink.report("gradient-fit", Params().add("p", p).add("what", "slope"), gf.slope, e);
              sink.report("gradient-fit", Params().add("p", p).add("what", "constant"),
                          extremal::consistency_constant(grad, e));
              const auto tf = extremal::fit_exponent(tail);
              sink.report("tail-fit", Params().add("p", p).add("what", "slope"), tf.slope);
              // Against the admissible range a in (0, 1]: how far the fitted slope sits outside it.
              sink.report("tail-band", Params().add("p", p), std::max({0.0, -tf.slope, tf.slope - 1.0}), 0.0);
            }
            // T_d intersected with P_{d+m} at p = 4, d = 3, m = 1, against d / m.
            const auto band = detail::ratio_problem(Numerator::laplacian, 4, 4, 4, Direction::minimize, n);
            sink.report("narrow-band", Params().add("p", 4.0).add("d", 3).add("m", 1).add("n", n),
                        extremal::optimize_ratio(band, detail::optimizer_options(cfg, stream++)).value, 3.0);
          },
  });

  reg.add({
      .id = "riesz-comparison",
      .module = "extremal",
      .anchor = "||Delta^{1/2} f||_p <= C_p || |grad f| ||_p for p > 1; the reverse ratio is unbounded for p < 2",
      .params = {integer_param("n", "10", 1, 14, "dimension"),
                 reals_param("p", "1.25, 1.5, 3", 1.01, 64, "exponents"),
                 integer_param("trials", "20", 1, 10000, "random functions")},
      .claims = {"parseval", "forward-ratio", "inverse-ratio"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n = static_cast<int>(cfg.integer("n"));
            const long trials = cfg.integer("trials");
            std::vector<double> fwd(cfg.reals("p").size(), 0.0), inv(fwd.size(), 0.0);
            double parseval = 0;
            for (long k = 0; k < trials; ++k) {
              const auto f = cube::random_function(n, rng);
              const auto [a, b] = extremal::riesz_comparison(f, 2.0);
              parseval = std::max({parseval, std::abs(a - 1), std::abs(b - 1)});
              for (std::size_t i = 0; i < fwd.size(); ++i) {
                const auto [x, y] = extremal::riesz_comparison(f, cfg.reals("p")[i]);
                fwd[i] = std::max(fwd[i], x);
                inv[i] = std::max(inv[i], y);
              }
            }
            sink.equal("parseval", Params().add("n", n).add("p", 2.0), parseval, 0, 1e-12);
            for (std::size_t i = 0; i < fwd.size(); ++i) {
              const auto p = Params().add("n", n).add("p", cfg.reals("p")[i]).add("trials", trials);
              sink.report("forward-ratio", p, fwd[i]);
              sink.report("inverse-ratio", p, inv[i]);
            }
          },
  });
}

}  // namespace hcube::harness::experiments
