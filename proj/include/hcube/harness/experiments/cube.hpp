#pragma once

/// \file cube.hpp
/// \brief Walsh transform and heat multiplier experiments.

#include <bit>
#include <cmath>

#include "hcube/cube.hpp"
#include "hcube/harness/experiments/common.hpp"
#include "hcube/random.hpp"

namespace hcube::harness::experiments {

inline void add_cube(Registry& reg) {
  reg.add({
      .id = "cube-parseval",
      .module = "cube",
      .anchor = "Walsh characters are orthonormal: ||f||_2^2 = sum_S fhat(S)^2; Delta f = sum_j D_j f = sum |S| fhat(S) eps^S",
      .params = {integer_param("n_max", "12", 1, 16, "largest dimension"),
                 integer_param("naive_max", "10", 0, 12, "largest dimension compared with the naive transform"),
                 integer_param("trials", "5", 1, 1000, "random functions per dimension")},
      .claims = {"parseval", "round-trip", "naive-transform", "laplacian-sum"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n_max = static_cast<int>(cfg.integer("n_max"));
            const int naive_max = static_cast<int>(cfg.integer("naive_max"));
            const long trials = cfg.integer("trials");
            for (int n = 1; n <= n_max; ++n) {
              double parseval = 0, round = 0, naive = 0, lap = 0;
              for (long t = 0; t < trials; ++t) {
                const auto f = cube::random_function(n, rng);
                const auto& s = f.spectrum();
                double energy = 0, spec = 0, scale = 0;
                for (double v : f.values()) {
                  energy += v * v;
                  scale = std::max(scale, std::abs(v));
                }
                for (double c : s.raw()) spec += c * c;
                energy /= static_cast<double>(f.points());
                parseval = std::max(parseval, std::abs(energy - spec) / energy);
                round = std::max(round, max_abs_diff(cube::inverse_wht(s).values(), f.values()) / scale);

                if (n <= naive_max) {
                  double worst = 0;
                  for (std::uint32_t S = 0; S < f.points(); ++S) {
                    double acc = 0;
                    for (std::uint32_t x = 0; x < f.points(); ++x) acc += f(x) * cube::character(S, x);
                    worst = std::max(worst, std::abs(acc / static_cast<double>(f.points()) - s.raw()[S]));
                  }
                  naive = std::max(naive, worst / scale);
                }

                std::vector<double> acc(f.points(), 0.0);
                for (int j = 0; j < n; ++j) {
                  const auto d = cube::partial_d(f, j);
                  for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += d.values()[x];
                }
                lap = std::max(lap, max_abs_diff(acc, cube::laplacian(f).values()) / scale);
              }
              const auto p = Params().add("n", n).add("trials", trials);
              sink.equal("parseval", p, parseval, 0, 1e-12);
              sink.equal("round-trip", p, round, 0, 1e-12);
              if (n <= naive_max) sink.equal("naive-transform", p, naive, 0, 1e-12);
              sink.equal("laplacian-sum", p, lap, 0, 1e-11);
            }
          },
  });

  reg.add({
      .id = "cube-semigroup",
      .module = "cube",
      .anchor = "e^{-t Delta} is the multiplier x^{|S|}: semigroup law, flip symmetry under x -> -x, L^p contraction for |x| <= 1",
      .params = {integer_param("n", "8", 1, 14, "dimension"),
                 reals_param("p", "1, 1.5, 2, 3, inf", 1, kInf, "exponents for the contraction"),
                 integer_param("points", "11", 2, 1001, "x values on [-1, 1]"),
                 integer_param("trials", "5", 1, 1000, "random functions")},
      .claims = {"semigroup", "flip-symmetry", "contraction"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n = static_cast<int>(cfg.integer("n"));
            const long points = cfg.integer("points"), trials = cfg.integer("trials");
            std::vector<double> xs;
            for (long i = 0; i < points; ++i) xs.push_back(-1.0 + 2.0 * static_cast<double>(i) / (points - 1));
            double semi = 0, flip = 0;
            std::vector<double> worst(cfg.reals("p").size(), 0.0);
            for (long t = 0; t < trials; ++t) {
              const auto f = cube::random_function(n, rng);
              double scale = 0;
              for (double v : f.values()) scale = std::max(scale, std::abs(v));
              for (double a : xs) {
                const auto h = cube::heat(f, a);
                flip = std::max(flip, max_abs_diff(cube::heat(f, -a).values(), cube::reflect(h).values()) / scale);
                for (double b : xs)
                  semi = std::max(semi, max_abs_diff(cube::heat(h, b).values(), cube::heat(f, a * b).values()) / scale);
                for (std::size_t i = 0; i < worst.size(); ++i) {
                  const double p = cfg.reals("p")[i];
                  worst[i] = std::max(worst[i], cube::lp_norm(h, p) / cube::lp_norm(f, p));
                }
              }
            }
            const auto base = Params().add("n", n).add("trials", trials).add("points", points);
            sink.equal("semigroup", base, semi, 0, 1e-12);
            sink.equal("flip-symmetry", base, flip, 0, 1e-12);
            for (std::size_t i = 0; i < worst.size(); ++i)
              sink.at_most("contraction", Params(base).add("p", cfg.reals("p")[i]), worst[i], 1.0, 1e-12);
          },
  });
}

}  // namespace hcube::harness::experiments
