#pragma once

/// \file clifford.hpp
/// \brief Pauli-matrix lifts of cube functions.

#include <cmath>
#include <numbers>

#include "hcube/clifford.hpp"
#include "hcube/harness/experiments/common.hpp"
#include "hcube/random.hpp"

namespace hcube::harness::experiments {

namespace detail {

inline double max_entry(const clifford::Matrix& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

inline std::vector<double> circle_grid(long points) {
  std::vector<double> g;
  for (long i = 0; i < points; ++i) g.push_back(2 * std::numbers::pi * static_cast<double>(i) / points);
  return g;
}

}  // namespace detail

inline void add_clifford(Registry& reg) {
  using clifford::Matrix;
  using clifford::Site;

  reg.add({
      .id = "clifford-identities",
      .module = "clifford",
      .anchor = "Q_j, P_j anticommute and square to I; R(theta)* Q_A R(theta) = prod_j (cos theta Q_j + sin theta P_j); "
                "P_k conjugation flips the sign of the k-th derivative term; ||T_f||_{S_p} = ||f||_p",
      .params = {integer_param("n_max", "5", 1, 6, "largest number of sites"),
                 reals_param("theta", "0.3, 1, 2.2", -100, 100, "rotation angles"),
                 reals_param("p", "1, 1.5, 2, 3, inf", 1, kInf, "Schatten exponents"),
                 integer_param("trials", "3", 1, 1000, "random functions per size")},
      .claims = {"anticommutation", "involution", "rotation-product", "sign-conjugation", "schatten-lp"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            for (int n = 1; n <= cfg.integer("n_max"); ++n) {
              const auto dim = Eigen::Index{1} << n;
              const Matrix I = Matrix::Identity(dim, dim);
              double anti = 0, inv = 0;
              for (int j = 0; j < n; ++j) {
                const Matrix Q = clifford::q_monomial(n, cube::SubsetMask(1U << j)), P = clifford::p_site(n, j);
                anti = std::max(anti, detail::max_entry(Q * P + P * Q));
                inv = std::max({inv, detail::max_entry(Q * Q - I), detail::max_entry(P * P - I)});
                for (int k = 0; k < n; ++k)
                  if (k != j) {
                    const Matrix Pk = clifford::p_site(n, k);
                    anti = std::max({anti, detail::max_entry(Q * Pk - Pk * Q), detail::max_entry(P * Pk - Pk * P)});
                  }
              }
              const auto pn = Params().add("n", n);
              sink.equal("anticommutation", pn, anti, 0, 1e-10);
              sink.equal("involution", pn, inv, 0, 1e-10);

              // Rotated words against tensor products of rotated single sites.
              double rot = 0;
              for (double th : cfg.reals("theta")) {
                const Site up = std::cos(th) * clifford::site_q() + std::sin(th) * clifford::site_p();
                const Site pup = std::cos(th) * clifford::site_p() - std::sin(th) * clifford::site_q();
                for (std::uint32_t A = 0; A < (1U << n); ++A) {
                  std::vector<Site> qs(n), ps(n);
                  Matrix PA = I;
                  for (int j = 0; j < n; ++j) {
                    const bool in = (A >> j) & 1U;
                    qs[j] = in ? up : clifford::site_identity();
                    ps[j] = in ? pup : clifford::site_identity();
                    if (in) PA = PA * clifford::p_site(n, j);
                  }
                  rot = std::max(rot, detail::max_entry(clifford::rotate(clifford::q_monomial(n, cube::SubsetMask(A)), th) -
                                                        clifford::tensor(qs)));
                  rot = std::max(rot, detail::max_entry(clifford::rotate(PA, th) - clifford::tensor(ps)));
                }
              }
              sink.equal("rotation-product", pn, rot, 0, 1e-10);

              double sign = 0;
              std::vector<double> sp(cfg.reals("p").size(), 0.0);
              for (long t = 0; t < cfg.integer("trials"); ++t) {
                const auto f = cube::random_function(n, rng);
                for (int k = 0; k < n; ++k) sign = std::max(sign, clifford::sign_conjugation_check(f, k));
                const Matrix T = clifford::lift(f);
                for (std::size_t i = 0; i < sp.size(); ++i) {
                  const double p = cfg.reals("p")[i];
                  sp[i] = std::max(sp[i], std::abs(clifford::schatten_norm(T, p) / cube::lp_norm(f, p) - 1));
                }
              }
              sink.equal("sign-conjugation", pn, sign, 0, 1e-10);
              for (std::size_t i = 0; i < sp.size(); ++i)
                sink.equal("schatten-lp", Params(pn).add("p", cfg.reals("p")[i]), sp[i], 0, 1e-10);
            }
          },
  });

  reg.add({
      .id = "derivative-identity",
      .module = "clifford",
      .anchor = "d/dtheta R(theta)* T_f R(theta) = (global sign) R(theta)* (sum_j P_j d_j T_f) R(theta); "
                "the sign is +1 under Q e_c = e_{c xor A}, P = [[0, i], [-i, 0]]",
      .params = {integer_param("n_max", "5", 1, 5, "largest number of sites"),
                 reals_param("theta", "0, 0.3, 1.1", -100, 100, "angles"),
                 integer_param("trials", "3", 1, 1000, "random functions per size"),
                 real_param("step", "1e-5", 1e-9, 1e-1, "finite-difference step")},
      .claims = {"identity", "global-sign", "finite-difference"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            for (int n = 1; n <= cfg.integer("n_max"); ++n)
              for (double th : cfg.reals("theta")) {
                double disc = 0, fd = 0;
                int sign = 0;
                bool mixed = false;
                for (long t = 0; t < cfg.integer("trials"); ++t) {
                  const auto c = clifford::derivative_identity_check(cube::random_function(n, rng), th, cfg.real("step"));
                  disc = std::max(disc, c.discrepancy);
                  fd = std::max(fd, c.finite_difference);
                  if (c.sign != 0) {
                    mixed = mixed || (sign != 0 && c.sign != sign);
                    sign = c.sign;
                  }
                }
                const auto p = Params().add("n", n).add("theta", th);
                sink.equal("identity", p, disc, 0, 1e-10);
                sink.equal("global-sign", Params(p).add("mixed", mixed ? 1 : 0), mixed ? 0.0 : sign,
                           clifford::kDerivativeSign, 0);
                sink.at_most("finite-difference", p, fd, 1e-6);
              }
          },
  });

  reg.add({
      .id = "fejer-bernstein",
      .module = "clifford",
      .anchor = "Bernstein inequality for the rotated lift A_f(theta) = R(theta) T_f of degree d: "
                "max_theta ||A_f'(theta)||_p <= 2d max_theta ||A_f(theta)||_p",
      .params = {integer_param("n", "4", 1, 6, "number of sites"),
                 integer_param("d_max", "4", 1, 6, "largest degree"),
                 reals_param("p", "1, 2, inf", 1, kInf, "Schatten exponents"),
                 integer_param("trials", "3", 1, 1000, "random functions per degree"),
                 integer_param("grid", "16", 1, 4096, "angles on the circle")},
      .claims = {"ratio"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n = static_cast<int>(cfg.integer("n"));
            const auto grid = detail::circle_grid(cfg.integer("grid"));
            for (int d = 1; d <= std::min<long>(n, cfg.integer("d_max")); ++d) {
              std::vector<double> worst(cfg.reals("p").size(), 0.0);
              for (long t = 0; t < cfg.integer("trials"); ++t) {
                const auto f = cube::random_band_function(n, 0, d, rng);
                for (std::size_t i = 0; i < worst.size(); ++i)
                  worst[i] = std::max(worst[i], clifford::fejer_bernstein_check(f, d, cfg.reals("p")[i], grid));
              }
              for (std::size_t i = 0; i < worst.size(); ++i)
                sink.at_most("ratio", Params().add("n", n).add("d", d).add("p", cfg.reals("p")[i]), worst[i], 1.0, 1e-12);
            }
          },
  });

  reg.add({
      .id = "nc-khintchine",
      .module = "clifford",
      .anchor = "E_eps || sum_j eps_j P_j d_j T_f ||_p is comparable to || (sum_j (d_j T_f)* d_j T_f)^{1/2} ||_p; "
                "constants reported",
      .params = {integer_param("n", "4", 1, 5, "number of sites"),
                 reals_param("p", "2, 4, inf", 2, kInf, "Schatten exponents"),
                 integer_param("trials", "5", 1, 1000, "random functions")},
      .claims = {"ratio", "two-norm", "sign-free"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            const int n = static_cast<int>(cfg.integer("n"));
            for (double p : cfg.reals("p")) {
              Spread ratio;
              double free = 0;
              for (long t = 0; t < cfg.integer("trials"); ++t) {
                const auto f = cube::random_band_function(n, 1, n, rng);
                const auto k = clifford::nc_khintchine_sides(f, p);
                ratio.add(k.ratio);
                free = std::max(free, std::abs(k.average / clifford::schatten_norm(clifford::derivative_sum(f), p) - 1));
              }
              const auto pp = Params().add("n", n).add("p", p);
              sink.report("ratio", Params(pp).add("what", "min"), ratio.lo);
              sink.report("ratio", Params(pp).add("what", "max"), ratio.hi);
              if (p == 2) {
                sink.equal("two-norm", Params(pp).add("what", "min"), ratio.lo, 0.5, 1e-12);
                sink.equal("two-norm", Params(pp).add("what", "max"), ratio.hi, 0.5, 1e-12);
              }
              // Every sign pattern gives the same norm, so the average equals the unsigned sum.
              sink.equal("sign-free", pp, free, 0, 1e-12);
            }
          },
  });

  reg.add({
      .id = "ncbm-table",
      .module = "clifford",
      .anchor = "noncommutative Bernstein-Markov constants || |grad f| ||_p / (d ||f||_p) on P_d; "
                "at p = 2 at most 1/sqrt d; the square function of the lift has the gradient norm",
      .params = {integer_param("n", "5", 1, 5, "number of sites"),
                 integer_param("d_max", "5", 1, 5, "largest degree"),
                 reals_param("p", "2, 3, 4, inf", 2, kInf, "exponents"),
                 integer_param("trials", "200", 1, 100000, "random functions per cell")},
      .claims = {"table", "p2-bound", "lift-defect"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const int n = static_cast<int>(cfg.integer("n"));
            const int trials = static_cast<int>(cfg.integer("trials"));
            std::uint64_t stream = 0;
            for (int d = 1; d <= std::min<long>(n, cfg.integer("d_max")); ++d)
              for (double p : cfg.reals("p")) {
                const auto row = clifford::ncbm_check(n, d, p, trials, derive_seed(cfg.seed(), stream++));
                const auto pp = Params().add("n", n).add("d", d).add("p", p).add("trials", trials);
                sink.report("table", Params(pp).add("what", "max"), row.max_constant);
                sink.report("table", Params(pp).add("what", "mean"), row.mean_constant);
                if (p == 2) sink.at_most("p2-bound", pp, row.max_constant, 1 / std::sqrt(static_cast<double>(d)), 1e-12);
                sink.at_most("lift-defect", pp, row.lift_defect, 1e-10);
              }
          },
  });

  reg.add({
      .id = "diag-contraction",
      .module = "clifford",
      .anchor = "the diagonal part and the projection onto Q-words are contractions of every Schatten class",
      .params = {integer_param("n_max", "5", 1, 6, "largest number of sites"),
                 reals_param("p", "1, 2, 3, inf", 1, kInf, "Schatten exponents"),
                 integer_param("trials", "10", 1, 10000, "random matrices per size")},
      .claims = {"diagonal", "q-projection"},
      .body =
          [](const Config& cfg, Sink& sink) {
            Xoshiro256 rng(cfg.seed());
            for (int n = 1; n <= cfg.integer("n_max"); ++n) {
              std::vector<double> diag(cfg.reals("p").size(), 0.0), proj(diag.size(), 0.0);
              for (long t = 0; t < cfg.integer("trials"); ++t) {
                const Matrix A = clifford::random_matrix(n, rng);
                const Matrix D = clifford::diag_part(A), PQ = clifford::project_q(A);
                for (std::size_t i = 0; i < diag.size(); ++i) {
                  const double p = cfg.reals("p")[i], a = clifford::schatten_norm(A, p);
                  diag[i] = std::max(diag[i], clifford::schatten_norm(D, p) / a);
                  proj[i] = std::max(proj[i], clifford::schatten_norm(PQ, p) / a);
                }
              }
              for (std::size_t i = 0; i < diag.size(); ++i) {
                const auto pp = Params().add("n", n).add("p", cfg.reals("p")[i]);
                sink.at_most("diagonal", pp, diag[i], 1.0, 1e-12);
                sink.at_most("q-projection", pp, proj[i], 1.0, 1e-12);
              }
            }
          },
  });
}

}  // namespace hcube::harness::experiments
