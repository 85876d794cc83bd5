#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hcube/heat.hpp"

using namespace hcube;
using namespace hcube::heat;
using cube::SubsetMask;

namespace {

// Moments of delta' from the four joint outcomes of (xi, xi').
double enumerated_sym_moment(double t, int m, bool absolute) {
  const double x = std::exp(-t), s = std::sqrt(1 - x * x);
  const double p[2] = {(1 + x) / 2, (1 - x) / 2};
  const double v[2] = {1, -1};
  double acc = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double d = (v[a] - v[b]) / s;
      acc += p[a] * p[b] * std::pow(absolute ? std::abs(d) : d, m);
    }
  return acc;
}

}  // namespace

TEST(BiasedSign, Moments) {
  for (double t : {0.01, 0.5, 2.0}) {
    BiasedSign xi(t);
    EXPECT_GT(xi.p_plus(), 0.5);
    EXPECT_LT(xi.p_plus(), 1.0);
    EXPECT_NEAR(xi.p_plus() - xi.p_minus(), std::exp(-t), 1e-15);
    EXPECT_NEAR(xi.variance(), 1 - std::exp(-2 * t), 1e-15);
  }
  EXPECT_THROW(BiasedSign(0.0), std::invalid_argument);
  EXPECT_THROW(BiasedSign(-1.0), std::invalid_argument);
}

TEST(Delta, CenteredNormalization) {
  for (double t : {0.05, 0.3, 1.0, 3.0}) {
    EXPECT_NEAR(delta_moment(DeltaKind::centered, t, 1), 0.0, 1e-14);
    EXPECT_NEAR(delta_moment(DeltaKind::centered, t, 2), 1.0, 1e-13);
  }
}

TEST(Delta, SymmetrizedSecondMomentIsTwo) {
  for (double t : {0.05, 0.3, 1.0, 3.0, 10.0}) EXPECT_EQ(delta_abs_moment(DeltaKind::symmetrized, t, 2), 2.0);
}

TEST(Delta, SymmetrizedFourthMomentAtLn2) {
  EXPECT_NEAR(delta_abs_moment(DeltaKind::symmetrized, std::log(2.0), 4), 32.0 / 3.0, 1e-13);
}

TEST(Delta, ClosedFormMatchesEnumeration) {
  for (double t : {0.05, 0.3, 1.0, 3.0})
    for (int m = 1; m <= 8; ++m) {
      const double abs_ref = enumerated_sym_moment(t, m, true);
      EXPECT_NEAR(delta_abs_moment(DeltaKind::symmetrized, t, m), abs_ref, 1e-12 * abs_ref);
      EXPECT_NEAR(delta_moment(DeltaKind::symmetrized, t, m), enumerated_sym_moment(t, m, false), 1e-12 * abs_ref);
      EXPECT_LE(delta_abs_moment(DeltaKind::symmetrized, t, m), delta_moment_bound(t, m) * (1 + 1e-12));
    }
}

TEST(Delta, LawsAreProbabilities) {
  for (auto kind : {DeltaKind::centered, DeltaKind::symmetrized}) {
    double total = 0;
    for (const auto& a : delta_law(kind, 0.7)) total += a.probability;
    EXPECT_NEAR(total, 1.0, 1e-15);
  }
  EXPECT_THROW(delta_moment(DeltaKind::centered, 0.0, 2), std::invalid_argument);
}

TEST(Delta, MonteCarloAgreesWithinFourStandardErrors) {
  Xoshiro256 rng(31);
  const double t = 0.4, x = std::exp(-t), s = std::sqrt(1 - x * x);
  const int samples = 200000;
  for (int m : {2, 4}) {
    double sum = 0, sumsq = 0;
    for (int i = 0; i < samples; ++i) {
      const double a = rng.uniform() < (1 + x) / 2 ? 1 : -1;
      const double b = rng.uniform() < (1 + x) / 2 ? 1 : -1;
      const double v = std::pow(std::abs((a - b) / s), m);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / samples, se = std::sqrt((sumsq / samples - mean * mean) / samples);
    EXPECT_LT(std::abs(mean - delta_abs_moment(DeltaKind::symmetrized, t, m)), 4 * se);
  }
}

TEST(Delta, OrthonormalSystem) {
  // E[delta_i delta_j] = [i = j] for independent coordinates.
  for (double t : {0.2, 1.5}) {
    const auto law = delta_law(DeltaKind::centered, t);
    double cross = 0, diag = 0;
    for (const auto& a : law) {
      diag += a.probability * a.value * a.value;
      for (const auto& b : law) cross += a.probability * b.probability * a.value * b.value;
    }
    EXPECT_NEAR(diag, 1.0, 1e-13);
    EXPECT_NEAR(cross, 0.0, 1e-15);
  }
}

TEST(GradientRepresentation, SingleCharacter) {
  auto f = cube::character_function(1, SubsetMask(1));
  auto rhs = gradient_representation_rhs(f, std::log(2.0), 0);
  EXPECT_NEAR(rhs(0), 0.5, 1e-15);
  EXPECT_NEAR(rhs(1), -0.5, 1e-15);
  EXPECT_LT(gradient_representation_check(f, std::log(2.0), 0), 1e-15);
}

TEST(GradientRepresentation, CharacterClosedForm) {
  // D_j e^{-t Delta} eps^S = [j in S] e^{-t|S|} eps^S.
  const int n = 5;
  const double t = 0.7;
  for (std::uint32_t S = 0; S < 32; ++S) {
    auto f = cube::character_function(n, SubsetMask(S));
    for (int j = 0; j < n; ++j) {
      auto rhs = gradient_representation_rhs(f, t, j);
      const double factor = ((S >> j) & 1) ? std::exp(-t * std::popcount(S)) : 0.0;
      for (std::uint32_t x = 0; x < 32; ++x) EXPECT_NEAR(rhs(x), factor * f(x), 1e-13);
    }
  }
}

TEST(GradientRepresentation, ConstantGivesZero) {
  auto f = cube::CubeFunction::constant(4, 3.0);
  for (int j = 0; j < 4; ++j) {
    auto rhs = gradient_representation_rhs(f, 1.0, j);
    for (double v : rhs.values()) EXPECT_NEAR(v, 0.0, 1e-14);
  }
}

TEST(GradientRepresentation, RandomFunctions) {
  Xoshiro256 rng(32);
  for (double t : {0.1, 1.0, 3.0})
    for (int trial = 0; trial < 3; ++trial) {
      auto f = cube::random_function(8, rng);
      for (int j = 0; j < 8; ++j) EXPECT_LE(gradient_representation_check(f, t, j), 1e-11);
    }
}

TEST(GradientRepresentation, VectorValued) {
  Xoshiro256 rng(33);
  auto f = cube::random_function(5, rng, 3);
  EXPECT_LE(gradient_representation_check(f, 0.4, 2), 1e-12);
}

TEST(MpIntegral, Examples) {
  for (double t : {0.1, 1.0, 4.0}) EXPECT_NEAR(mp_integral(t, 1.0), 1 - std::exp(-2 * t), 1e-15);
  EXPECT_NEAR(mp_integral(std::log(2.0), 2.0), std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(mp_integral(0.3, 1e9), 2.0, 1e-8);
  EXPECT_EQ(mp_integral(0.3, std::numeric_limits<double>::infinity()), 2.0);
  EXPECT_THROW(mp_integral(1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(mp_integral(0.0, 2.0), std::invalid_argument);
}

TEST(MpIntegral, MatchesTailIntegralAndIsMonotone) {
  // The tail probability of |xi - xi'| is (1 - e^{-2t})/2 on [0, 2), zero after.
  for (double u : {1.0, 1.5, 2.0, 6.0}) {
    double prev = 0;
    for (double t = 0.05; t < 5; t += 0.25) {
      const double x = std::exp(-t), tail = (1 - x * x) / 2;
      const int cells = 4000;
      double integral = 0;
      for (int i = 0; i < cells; ++i) {
        const double s = (i + 0.5) * 4.0 / cells;
        integral += (s < 2 ? std::pow(tail, 1 / u) : 0.0) * 4.0 / cells;
      }
      const double v = mp_integral(t, u);
      EXPECT_NEAR(v, integral, 1e-12);
      EXPECT_LE(v, 2.0);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(Aplusb, Examples) {
  EXPECT_TRUE(aplusb_check(0, 1, 3));
  for (double Q : {2.0, 5.0, 40.0}) EXPECT_TRUE(aplusb_check(1, 0, Q));
  EXPECT_TRUE(aplusb_check(0, 0, 2));
  EXPECT_THROW(aplusb_check(1, 1, 1.5), std::invalid_argument);
}

TEST(Aplusb, RandomSweep) {
  Xoshiro256 rng(34);
  for (int i = 0; i < 100000; ++i) {
    const double a = rng.uniform(0, 1e6), b = rng.uniform(0, 1e6), Q = rng.uniform(2, 64);
    ASSERT_TRUE(aplusb_check(a, b, Q)) << a << " " << b << " " << Q;
    // Ratios near the critical t = a/b ~ Q - 1.
    const double r = (Q - 1) * rng.uniform(0.5, 2.0);
    ASSERT_TRUE(aplusb_check(r, 1.0, Q));
  }
}

TEST(Contraction, SingleCharacterClosedForm) {
  auto f = cube::character_function(3, SubsetMask(1));
  const double x = 0.5;
  auto rep = contraction_inequality_check(f, 2.0, std::span<const double>(&x, 1));
  EXPECT_NEAR(rep.worst_ratio, std::sqrt(0.75), 1e-14);
}

TEST(Contraction, ConstantAndZeroX) {
  auto grid = open_interval_grid(41);
  auto rep = contraction_inequality_check(cube::CubeFunction::constant(4, 2.0), 3.0, grid);
  EXPECT_EQ(rep.worst_ratio, 0.0);
  Xoshiro256 rng(35);
  const double zero = 0.0;
  auto f = cube::random_function(4, rng);
  EXPECT_EQ(contraction_inequality_check(f, 2.0, std::span<const double>(&zero, 1)).worst_ratio, 0.0);
}

TEST(Contraction, RejectsEndpoints) {
  Xoshiro256 rng(36);
  auto f = cube::random_function(3, rng);
  const double bad[] = {0.5, 1.0};
  EXPECT_THROW(contraction_inequality_check(f, 2.0, bad), std::invalid_argument);
  EXPECT_THROW(contraction_inequality_check(f, 1.0, std::span<const double>(bad, 1)), std::invalid_argument);
}

TEST(Contraction, RandomLowDegreeAtPEqualsFour) {
  Xoshiro256 rng(37);
  auto grid = open_interval_grid(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = cube::random_band_function(6, 0, 5, rng);
    EXPECT_LE(contraction_inequality_check(f, 4.0, grid).worst_ratio, 1 + 1e-9);
  }
}

TEST(Rosenthal, OneCoordinateIsOrthonormal) {
  auto rep = rosenthal_chain_check(std::log(2.0), 2, {{1.0}});
  EXPECT_NEAR(rep.B_centered, 1.0, 1e-14);
  EXPECT_NEAR(rep.B_symmetrized, std::sqrt(2.0), 1e-14);
}

TEST(Rosenthal, SymmetrizationDominatesAndBoundHolds) {
  const double h = 1 / std::sqrt(2.0);
  for (double t : {0.05, 0.2, 1.0, 3.0})
    for (int q : {2, 4, 6, 8}) {
      auto rep = rosenthal_chain_check(t, q, {{h}, {h}});
      EXPECT_LE(rep.B_centered, rep.B_symmetrized * (1 + 1e-12));
      EXPECT_LE(rep.E_exact, rep.E_bound);
      EXPECT_GT(rep.observed_constant, 0.0);
    }
}

TEST(Rosenthal, ObservedConstantBoundedOverTime) {
  const double h = 1 / std::sqrt(2.0);
  double lo = INFINITY, hi = 0;
  for (double t = 0.001; t < 5; t *= 1.7) {
    const double c = rosenthal_chain_check(t, 4, {{h}, {h}}).observed_constant;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  EXPECT_LT(hi / lo, 3.0);
}

TEST(Rosenthal, VectorValuedDualNorm) {
  Xoshiro256 rng(38);
  const cube::ValueNorm xstar(4.0 / 3.0);
  std::vector<std::vector<double>> lambda(3, std::vector<double>(2));
  double total = 0;
  for (auto& l : lambda) {
    l = normal_vector(rng, 2);
    total += std::pow(xstar(std::span<const double>(l)), 2);
  }
  for (auto& l : lambda)
    for (auto& v : l) v /= std::sqrt(total);
  auto rep = rosenthal_chain_check(0.3, 4, lambda, xstar);
  EXPECT_LE(rep.B_centered, rep.B_symmetrized * (1 + 1e-12));
  EXPECT_LE(rep.E_exact, rep.E_bound);
  EXPECT_THROW(rosenthal_chain_check(0.3, 4, {{0.5}}), std::invalid_argument);
  EXPECT_THROW(rosenthal_chain_check(0.3, 3, {{1.0}}), std::invalid_argument);
  EXPECT_THROW(rosenthal_chain_check(0.3, 2, std::vector<std::vector<double>>(6, {0.4})), std::invalid_argument);
}
