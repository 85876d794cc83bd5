#pragma once

/// \file heat.hpp
/// \brief Experiments on the heat semigroup probabilistic representation.

#include <cmath>

#include "hcube/harness/experiments/common.hpp"
#include "hcube/heat.hpp"
#include "hcube/numeric.hpp"
#include "hcube/random.hpp"

namespace hcube::harness::experiments {

namespace detail {

// E|xi - xi'|^m / s^m over the four outcomes of two independent biased signs.
inline double enumerated_sym_abs_moment(double t, int m) {
  const double x = std::exp(-t), s = std::sqrt(1 - x * x);
  const double pr[2] = {(1 + x) / 2, (1 - x) / 2}, val[2] = {1, -1};
  double acc = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) acc += pr[a] * pr[b] * std::pow(std::abs(val[a] - val[b]) / s, m);
  return acc;
}

// One sweep of the gradient/contraction ratio over dimensions and degrees.
template <class Visit>
void contraction_sweep(const Config& cfg, Xoshiro256& rng, Visit&& visit) {
  const int n_max = static_cast<int>(cfg.integer("n_max"));
  const int d_max = static_cast<int>(cfg.integer("d_max"));
  const long trials = cfg.integer("trials");
  const auto grid = heat::open_interval_grid(static_cast<int>(cfg.integer("points")));
  for (int n = 1; n <= n_max; ++n)
    for (int d = 1; d <= std::min(n, d_max); ++d) {
      std::vector<double> worst(cfg.reals("p").size(), 0.0);
      for (long t = 0; t < trials; ++t) {
        const auto f = cube::random_band_function(n, 0, d, rng);
        for (std::size_t i = 0; i < worst.size(); ++i)
          worst[i] = std::max(worst[i], heat::contraction_inequality_check(f, cfg.reals("p")[i], grid).worst_ratio);
      }
      visit(n, d, worst);
    }
}

}  // namespace detail

inline void add_heat(Registry& reg) {
  reg.add({
      .id = "gradient-representation",
      .module = "heat",
      .anchor = "D_j e^{-t Delta} f(eps) = (e^{-t} / sqrt(1 - e^{-2t})) E[delta_j(t) f(eps xi)], xi biased signs with mean e^{-t}",
      .params = {integer_param("n_max", "8", 1, 10, "largest dimension"),
                 integer_param("trials", "20", 1, 1000, "random functions per dimension"),
                 reals_param("t", "0.05, 0.3, 1, 3", 1e-6, 50, "times")},
      .claims = {"identity"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n_max = static_cast<int>(cfg.integer("n_max"));
            const long trials = cfg.integer("trials");
            for (int n = 1; n <= n_max; ++n) {
              std::vector<double> worst(cfg.reals("t").size(), 0.0);
              for (long k = 0; k < trials; ++k) {
                const auto f = cube::random_function(n, rng);
                for (std::size_t i = 0; i < worst.size(); ++i)
                  for (int j = 0; j < n; ++j)
                    worst[i] = std::max(worst[i], heat::gradient_representation_check(f, cfg.reals("t")[i], j));
              }
              for (std::size_t i = 0; i < worst.size(); ++i)
                sink.equal("identity", Params().add("n", n).add("t", cfg.reals("t")[i]).add("trials", trials), worst[i],
                           0, 1e-11);
            }
          },
  });

  reg.add({
      .id = "delta-moments",
      .module = "heat",
      .anchor = "E|delta'_j(t)|^2 = 2 and E|delta'_j(t)|^m = 2^{m-1} (1 - e^{-2t})^{1 - m/2}; delta_j(t) orthonormal",
      .params = {reals_param("t", "0.05, 0.3, 1, 3", 1e-6, 50, "times"),
                 integer_param("m_max", "8", 2, 40, "largest moment order"),
                 integer_param("samples", "20000", 100, 100000000, "Monte-Carlo samples"),
                 real_param("mc_t", "0.4", 1e-3, 20, "time for the Monte-Carlo check")},
      .claims = {"second-moment", "enumeration", "closed-form", "orthonormal", "monte-carlo"},
      .body =
          [](const Config& cfg, Sink& sink) {
            using heat::DeltaKind;
            for (double t : cfg.reals("t")) {
              sink.equal("second-moment", Params().add("t", t), heat::delta_abs_moment(DeltaKind::symmetrized, t, 2),
                         2.0, 0.0);
              for (int m = 1; m <= cfg.integer("m_max"); ++m) {
                const double enumerated = detail::enumerated_sym_abs_moment(t, m);
                const double closed = heat::delta_abs_moment(DeltaKind::symmetrized, t, m);
                const double formula = std::ldexp(1.0, m - 1) * std::pow(-std::expm1(-2 * t), 1.0 - 0.5 * m);
                const auto p = Params().add("t", t).add("m", m);
                sink.equal("enumeration", p, std::abs(closed - enumerated) / enumerated, 0, 1e-12);
                sink.equal("closed-form", p, std::abs(enumerated - formula) / formula, 0, 1e-12);
              }
              const double mean = heat::delta_moment(DeltaKind::centered, t, 1);
              const double var = heat::delta_moment(DeltaKind::centered, t, 2);
              sink.equal("orthonormal", Params().add("t", t).add("moment", 1), mean, 0, 1e-12);
              sink.equal("orthonormal", Params().add("t", t).add("moment", 2), var, 1, 1e-12);
            }
            Xoshiro256 rng(cfg.seed());
            const double t = cfg.real("mc_t"), x = std::exp(-t), s = std::sqrt(1 - x * x);
            const long samples = cfg.integer("samples");
            for (int m : {2, 4}) {
              double sum = 0, sumsq = 0;
              for (long i = 0; i < samples; ++i) {
                const double a = rng.uniform() < (1 + x) / 2 ? 1 : -1;
                const double b = rng.uniform() < (1 + x) / 2 ? 1 : -1;
                const double v = std::pow(std::abs((a - b) / s), m);
                sum += v;
                sumsq += v * v;
              }
              const double avg = sum / samples;
              const double se = std::sqrt((sumsq / samples - avg * avg) / samples);
              // Deviation in standard errors.
              sink.at_most("monte-carlo", Params().add("t", t).add("m", m).add("samples", samples),
                           std::abs(avg - heat::delta_abs_moment(DeltaKind::symmetrized, t, m)) / se, 4.0);
            }
          },
  });

  reg.add({
      .id = "contraction-large-p",
      .module = "heat",
      .anchor = "|| |grad e^{-t Delta} f| ||_p <= |x| (1 - x^2)^{-1/2} ||f||_p, x = e^{-t}, for p >= 2",
      .params = {reals_param("p", "2, 3, 4, 8", 2, 64, "exponents"),
                 integer_param("n_max", "6", 1, 10, "largest dimension"),
                 integer_param("d_max", "5", 1, 10, "largest degree"),
                 integer_param("points", "41", 2, 1001, "x grid on (-1, 1)"),
                 integer_param("trials", "50", 1, 10000, "random functions per (n, d)")},
      .claims = {"ratio"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            detail::contraction_sweep(cfg, rng, [&](int n, int d, const std::vector<double>& worst) {
              for (std::size_t i = 0; i < worst.size(); ++i)
                sink.at_most("ratio", Params().add("p", cfg.reals("p")[i]).add("n", n).add("d", d), worst[i], 1.0,
                             1e-9);
            });
          },
  });

  reg.add({
      .id = "contraction-small-p",
      .module = "heat",
      .anchor = "|| |grad e^{-t Delta} f| ||_p <= C(p) |x| (1 - x^2)^{-1/p} ||f||_p for 1 < p < 2; C(p) reported",
      .params = {reals_param("p", "1.25, 1.5, 1.75", 1.01, 1.99, "exponents"),
                 integer_param("n_max", "6", 1, 10, "largest dimension"),
                 integer_param("d_max", "5", 1, 10, "largest degree"),
                 integer_param("points", "41", 2, 1001, "x grid on (-1, 1)"),
                 integer_param("trials", "50", 1, 10000, "random functions per (n, d)"),
                 real_param("spread", "10", 1, 1e6, "allowed max/min of the observed constant")},
      .claims = {"constant", "uniform"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            std::vector<Spread> spread(cfg.reals("p").size());
            detail::contraction_sweep(cfg, rng, [&](int n, int d, const std::vector<double>& worst) {
              for (std::size_t i = 0; i < worst.size(); ++i) {
                sink.report("constant", Params().add("p", cfg.reals("p")[i]).add("n", n).add("d", d), worst[i]);
                spread[i].add(worst[i]);
              }
            });
            for (std::size_t i = 0; i < spread.size(); ++i)
              sink.at_most("uniform", Params().add("p", cfg.reals("p")[i]), spread[i].ratio(), cfg.real("spread"));
          },
  });

  reg.add({
      .id = "mp-integral",
      .module = "heat",
      .anchor = "int_0^inf P{|xi - xi'| > s}^{1/u} ds = 2^{1-1/u} (1 - e^{-2t})^{1/u} <= 2; (a+b)^Q <= 6 a^Q + Q^Q b^Q",
      .params = {reals_param("t", "0.01, 0.05, 0.3, 1, 3, 10", 1e-6, 50, "times, increasing"),
                 reals_param("u", "1, 1.5, 2, 4, 8, inf", 1, kInf, "exponents"),
                 integer_param("trials", "200", 1, 100000, "random (a, b, Q) triples")},
      .claims = {"tail-integral", "at-most-two", "monotone", "aplusb"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const auto& ts = cfg.reals("t");
            for (double u : cfg.reals("u")) {
              double prev = 0;
              for (double t : ts) {
                const double x = std::exp(-t);
                // |xi - xi'| is 0 or 2; the tail probability is 2 p+ p- below 2 and 0 above.
                const double tail = 0.5 * (1 + x) * (1 - x);
                const double ref = numeric::integrate(
                    [&](double s) { return s < 2 ? (std::isinf(u) ? 1.0 : std::pow(tail, 1 / u)) : 0.0; }, 0.0, 3.0,
                    {2.0});
                const double v = heat::mp_integral(t, u);
                const auto p = Params().add("u", u).add("t", t);
                sink.equal("tail-integral", p, v, ref, 1e-12 * ref);
                sink.at_most("at-most-two", p, v, 2.0);
                sink.at_least("monotone", p, v - prev, 0.0);
                prev = v;
              }
            }
            Xoshiro256 rng(cfg.seed());
            double worst = 0;
            long disagree = 0;
            for (long i = 0; i < cfg.integer("trials"); ++i) {
              const double a = rng.uniform(), b = rng.uniform(), Q = rng.uniform(2, 12);
              const double ratio = std::pow(a + b, Q) / (6 * std::pow(a, Q) + std::pow(Q, Q) * std::pow(b, Q));
              worst = std::max(worst, ratio);
              disagree += heat::aplusb_check(a, b, Q) != (ratio <= 1 + 1e-12);
            }
            sink.at_most("aplusb", Params().add("trials", cfg.integer("trials")).add("what", "ratio"), worst, 1.0,
                         1e-12);
            sink.at_most("aplusb", Params().add("trials", cfg.integer("trials")).add("what", "checker-disagreements"),
                         static_cast<double>(disagree), 0);
          },
  });

  reg.add({
      .id = "rosenthal-chain",
      .module = "heat",
      .anchor = "moment chain for E||sum lambda_j delta_j(t)||^q: symmetrization, the Rosenthal-type bound, observed constant",
      .params = {reals_param("t", "0.05, 0.2, 1, 3", 1e-6, 50, "times"),
                 integers_param("q", "2, 4, 6, 8", 2, 16, "even exponents"),
                 integer_param("n", "3", 1, 5, "number of coordinates"),
                 integer_param("m", "2", 1, 4, "dimension of lambda_j"),
                 integer_param("trials", "5", 1, 1000, "random lambda")},
      .claims = {"symmetrization", "moment-bound", "constant"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n = static_cast<int>(cfg.integer("n")), m = static_cast<int>(cfg.integer("m"));
            for (int q : cfg.integers("q")) {
              if (q % 2) throw ConfigError("q: exponents must be even");
              for (double t : cfg.reals("t")) {
                double sym = 0, bound = 0, constant = 0;
                for (long k = 0; k < cfg.integer("trials"); ++k) {
                  std::vector<std::vector<double>> lambda(n);
                  double total = 0;
                  for (auto& l : lambda) {
                    l = normal_vector(rng, m);
                    for (double v : l) total += v * v;
                  }
                  for (auto& l : lambda)
                    for (double& v : l) v /= std::sqrt(total);
                  const auto rep = heat::rosenthal_chain_check(t, q, lambda);
                  sym = std::max(sym, rep.B_centered / rep.B_symmetrized);
                  bound = std::max(bound, rep.E_exact / rep.E_bound);
                  constant = std::max(constant, rep.observed_constant);
                }
                const auto p = Params().add("q", q).add("t", t).add("n", n);
                sink.at_most("symmetrization", p, sym, 1.0, 1e-12);
                sink.at_most("moment-bound", p, bound, 1.0);
                sink.report("constant", p, constant);
              }
            }
          },
  });
}

}  // namespace hcube::harness::experiments
