#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hcube/extremal.hpp"

using namespace hcube;
using namespace hcube::extremal;

namespace {

RatioProblem problem(Numerator num, double p, int lo, int hi, Direction dir, int n, int m = 1, double q = 2) {
  RatioProblem pr;
  pr.numerator = num;
  pr.p = p;
  pr.lo = lo;
  pr.hi = hi;
  pr.direction = dir;
  pr.n = n;
  pr.m = m;
  pr.xnorm = cube::ValueNorm(q);
  return pr;
}

OptimizerOptions quick(int restarts = 6, std::uint64_t seed = 1) {
  OptimizerOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return o;
}

// Rayleigh quotient on random spectra: the p = 2 ratio of a random band
// function can never leave the eigenvalue interval.
double random_p2_ratio(const RatioProblem& pr, Xoshiro256& rng) {
  auto f = cube::random_band_function(pr.n, pr.lo, pr.hi, rng);
  return ratio_value(pr, f.spectrum());
}

}  // namespace

TEST(ExactP2, Examples) {
  EXPECT_EQ(exact_p2_constant(problem(Numerator::laplacian, 2, 4, 8, Direction::minimize, 8)), 4.0);
  EXPECT_EQ(exact_p2_constant(problem(Numerator::gradient, 2, 0, 4, Direction::maximize, 8)), 2.0);
  EXPECT_EQ(exact_p2_constant(problem(Numerator::laplacian, 2, 0, 1, Direction::maximize, 8)), 1.0);
  EXPECT_THROW(exact_p2_constant(problem(Numerator::laplacian, 3, 0, 1, Direction::maximize, 8)), std::invalid_argument);
}

TEST(ExactP2, BracketsRandomRatios) {
  Xoshiro256 rng(41);
  for (auto num : {Numerator::laplacian, Numerator::sqrt_laplacian, Numerator::gradient})
    for (int trial = 0; trial < 20; ++trial) {
      auto mx = problem(num, 2, 2, 5, Direction::maximize, 7);
      auto mn = problem(num, 2, 2, 5, Direction::minimize, 7);
      const double r = random_p2_ratio(mx, rng);
      EXPECT_LE(r, exact_p2_constant(mx) + 1e-12);
      EXPECT_GE(r, exact_p2_constant(mn) - 1e-12);
    }
}

TEST(Problem, Validation) {
  EXPECT_THROW(problem(Numerator::laplacian, 1.0, 0, 1, Direction::maximize, 4).validate(), std::invalid_argument);
  EXPECT_THROW(problem(Numerator::laplacian, 2, 3, 2, Direction::maximize, 4).validate(), std::invalid_argument);
  EXPECT_THROW(problem(Numerator::laplacian, 2, 0, 13, Direction::maximize, 13).validate(), std::invalid_argument);
  EXPECT_THROW(problem(Numerator::laplacian, 2, 0, 2, Direction::maximize, 9, 2).validate(), std::invalid_argument);
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  Xoshiro256 rng(42);
  for (auto num : {Numerator::laplacian, Numerator::sqrt_laplacian, Numerator::gradient})
    for (double p : {1.5, 2.0, 3.5})
      for (auto [m, q] : {std::pair{1, 2.0}, std::pair{2, 2.0}, std::pair{3, 4.0}}) {
        auto pr = problem(num, p, 1, 3, Direction::maximize, 5, m, q);
        auto band = band_subsets(5, 1, 3);
        detail::RatioObjective obj(pr, band, 1e-9);
        auto c = normal_vector(rng, band.size() * m);
        std::vector<double> grad;
        obj.evaluate(c, &grad);
        for (int probe = 0; probe < 5; ++probe) {
          const std::size_t i = rng.below(c.size());
          const double h = 1e-6;
          auto cp = c, cm = c;
          cp[i] += h;
          cm[i] -= h;
          const double fd = (obj.evaluate(cp, nullptr) - obj.evaluate(cm, nullptr)) / (2 * h);
          EXPECT_NEAR(grad[i], fd, 1e-6 * std::max(1.0, std::abs(fd)))
              << to_string(num) << " p=" << p << " m=" << m << " i=" << i;
        }
      }
}

TEST(Optimizer, ReproducesP2Constants) {
  for (int d = 1; d <= 4; ++d) {
    auto tail = problem(Numerator::laplacian, 2, d + 1, 7, Direction::minimize, 7);
    auto est = optimize_ratio(tail, quick());
    EXPECT_NEAR(est.value / exact_p2_constant(tail), 1.0, 1e-3) << "d=" << d;
    EXPECT_GE(est.value, exact_p2_constant(tail) - 1e-9);

    auto grad = problem(Numerator::gradient, 2, 0, d, Direction::maximize, 7);
    auto g = optimize_ratio(grad, quick());
    EXPECT_NEAR(g.value / exact_p2_constant(grad), 1.0, 1e-3) << "d=" << d;
    EXPECT_LE(g.value, exact_p2_constant(grad) + 1e-9);
  }
}

TEST(Optimizer, DeterministicGivenSeed) {
  auto pr = problem(Numerator::gradient, 3, 0, 3, Direction::maximize, 5);
  auto a = optimize_ratio(pr, quick(4, 99));
  auto opts = quick(4, 99);
  opts.threads = 3;
  auto b = optimize_ratio(pr, opts);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness.raw(), b.witness.raw());
}

TEST(Optimizer, WitnessRespectsBandAndReproducesValue) {
  auto pr = problem(Numerator::laplacian, 4, 2, 3, Direction::minimize, 6);
  auto est = optimize_ratio(pr, quick(3));
  for (std::uint32_t S = 0; S < 64; ++S) {
    const int k = std::popcount(S);
    if (k < 2 || k > 3) EXPECT_EQ(est.witness.raw()[S], 0.0);
  }
  EXPECT_NEAR(ratio_value(pr, est.witness), est.value, 1e-9 * est.value);
  EXPECT_TRUE(est.converged);
}

TEST(Optimizer, ScaleInvariantObjective) {
  auto pr = problem(Numerator::gradient, 1.5, 0, 3, Direction::maximize, 5);
  Xoshiro256 rng(43);
  auto f = cube::random_band_function(5, 0, 3, rng);
  const double r = ratio_value(pr, f.spectrum());
  cube::Spectrum scaled = f.spectrum();
  for (double& v : scaled.raw()) v *= -7.5;
  EXPECT_NEAR(ratio_value(pr, scaled), r, 1e-12 * r);
}

TEST(Optimizer, GradientMaximumBeatsSingleCharacter) {
  auto pr = problem(Numerator::gradient, 3, 0, 5, Direction::maximize, 5);
  auto est = optimize_ratio(pr, quick(3));
  EXPECT_GE(est.value, 1.0);
}

TEST(Optimizer, VectorValuedRuns) {
  auto pr = problem(Numerator::gradient, 2, 0, 2, Direction::maximize, 4, 2, 4);
  auto est = optimize_ratio(pr, quick(3));
  EXPECT_GT(est.value, 0.0);
  EXPECT_NEAR(ratio_value(pr, est.witness), est.value, 1e-12);
}

TEST(Flp, Examples) {
  auto f = cube::character_function(3, cube::SubsetMask(1));
  auto r = flp_interpolation_check(f, 0.5, 3);
  EXPECT_NEAR(r.lhs, 1.0, 1e-14);
  EXPECT_NEAR(r.rhs, 4.0, 1e-14);
  EXPECT_TRUE(r.holds);
  Xoshiro256 rng(44);
  auto g = cube::random_function(5, rng);
  auto one = flp_interpolation_check(g, 1.0, 2);
  EXPECT_NEAR(one.rhs, 4 * one.lhs, 1e-12 * one.lhs);
}

TEST(Flp, RandomSweep) {
  Xoshiro256 rng(45);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = cube::random_function(8, rng);
    for (double beta : {0.25, 0.5, 0.75})
      for (double p : {1.5, 2.0, 4.0}) EXPECT_TRUE(flp_interpolation_check(f, beta, p).holds);
  }
}

TEST(Riesz, ParsevalAtTwo) {
  Xoshiro256 rng(46);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = cube::random_function(6, rng);
    auto [a, b] = riesz_comparison(f, 2);
    EXPECT_NEAR(a, 1.0, 1e-12);
    EXPECT_NEAR(b, 1.0, 1e-12);
  }
  auto [a, b] = riesz_comparison(cube::character_function(2, cube::SubsetMask(2)), 1.5);
  EXPECT_NEAR(a, 1.0, 1e-14);
  EXPECT_THROW(riesz_comparison(cube::CubeFunction::constant(2, 1), 2), std::invalid_argument);
}

TEST(Exponents, PredictedValues) {
  EXPECT_NEAR(predicted_exponent(ExponentLaw::green_beta, 2), 1.0, 1e-15);
  EXPECT_NEAR(predicted_exponent(ExponentLaw::green_beta, 4), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(predicted_exponent(ExponentLaw::gradient_markov, 2), 0.5, 1e-15);
  // The two branches agree at p = 2.
  EXPECT_NEAR(predicted_exponent(ExponentLaw::gradient_markov, 2 - 1e-12), 0.5, 1e-9);
  EXPECT_THROW(predicted_exponent(ExponentLaw::green_beta, 1), std::invalid_argument);
}

TEST(Exponents, FitOfExactSquareRoot) {
  std::vector<std::pair<double, double>> pts;
  for (int d = 1; d <= 8; ++d) pts.emplace_back(d, std::sqrt(d));
  auto fit = fit_exponent(pts);
  EXPECT_NEAR(fit.slope, 0.5, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(consistency_constant(pts, 0.5), 1.0, 1e-12);
  EXPECT_EQ(fit_exponent(fit.points).slope, fit.slope);
  EXPECT_THROW(fit_exponent({{1, 1}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(fit_exponent({{1, 1}, {1, 2}, {2, 3}}), std::invalid_argument);
}
