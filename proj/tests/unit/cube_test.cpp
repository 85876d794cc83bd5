#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "hcube/cube.hpp"
#include "hcube/cube_json.hpp"

using namespace hcube;
using namespace hcube::cube;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(4^n) transform straight from the definition.
std::vector<double> naive_wht(const CubeFunction& f) {
  std::vector<double> out(f.points() * f.m(), 0.0);
  for (std::uint32_t S = 0; S < f.points(); ++S)
    for (std::uint32_t x = 0; x < f.points(); ++x)
      for (int c = 0; c < f.m(); ++c) out[S * f.m() + c] += f.at(x)[c] * character(S, x);
  for (auto& v : out) v /= static_cast<double>(f.points());
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_diff(const CubeFunction& a, const CubeFunction& b) { return max_diff(a.values(), b.values()); }

CubeFunction eps(int n, int i) { return character_function(n, SubsetMask::of({i})); }

}  // namespace

TEST(Wht, SingleCoordinateCharacter) {
  auto s = wht(eps(1, 0));
  EXPECT_DOUBLE_EQ(s[SubsetMask(1)], 1.0);
  EXPECT_DOUBLE_EQ(s[SubsetMask(0)], 0.0);
}

TEST(Wht, ProductCharacter) {
  auto s = wht(character_function(2, SubsetMask::of({0, 1})));
  for (std::uint32_t S = 0; S < 4; ++S) EXPECT_DOUBLE_EQ(s[SubsetMask(S)], S == 3 ? 1.0 : 0.0);
}

TEST(Wht, MatchesNaiveTransform) {
  Xoshiro256 rng(11);
  for (int n = 0; n <= 8; ++n) {
    auto f = random_function(n, rng);
    EXPECT_LT(max_diff(wht(f).raw(), naive_wht(f)), 1e-12) << "n=" << n;
  }
  auto g = random_function(5, rng, 3);
  EXPECT_LT(max_diff(wht(g).raw(), naive_wht(g)), 1e-12);
}

TEST(Wht, RoundTrip) {
  Xoshiro256 rng(12);
  auto f = random_function(8, rng);
  EXPECT_LT(max_diff(inverse_wht(wht(f)), f), 1e-12);
  auto big = random_function(16, rng);
  EXPECT_LT(max_diff(inverse_wht(big.spectrum()), big), 1e-11);
}

TEST(Wht, DimensionLimits) {
  EXPECT_THROW(CubeFunction(25, 1, {}), std::invalid_argument);
  EXPECT_THROW(CubeFunction(15, 2, std::vector<double>((1u << 15) * 2)), std::invalid_argument);
  EXPECT_NO_THROW(CubeFunction(14, 2, std::vector<double>((1u << 14) * 2)));
  EXPECT_THROW(CubeFunction(2, 1, {1, 2, 3}), std::invalid_argument);
}

TEST(Wht, RejectsNonFinite) {
  EXPECT_THROW(CubeFunction::scalar(1, {1.0, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(CubeFunction::scalar(1, {1.0, kInf}), std::invalid_argument);
}

TEST(Wht, SpectrumCacheSharedAcrossThreads) {
  Xoshiro256 rng(13);
  auto f = random_function(12, rng);
  const Spectrum* seen[4] = {};
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) pool.emplace_back([&, i] { seen[i] = &f.spectrum(); });
  for (auto& t : pool) t.join();
  for (int i = 1; i < 4; ++i) EXPECT_EQ(seen[i], seen[0]);
  auto copy = f;
  EXPECT_EQ(&copy.spectrum(), seen[0]);
}

TEST(LpNorm, Examples) {
  for (double p : {1.0, 1.5, 2.0, 7.0, kInf}) EXPECT_NEAR(lp_norm(eps(3, 1), p), 1.0, 1e-15);
  auto f = CubeFunction::scalar(1, {2.0, 0.0});  // 1 + eps_1
  EXPECT_NEAR(lp_norm(f, 2), std::sqrt(2.0), 1e-15);
  for (double p : {1.0, 1.25, 3.0, 10.0}) EXPECT_NEAR(lp_norm(f, p), std::pow(2.0, 1 - 1 / p), 1e-14);
  EXPECT_NEAR(lp_norm(f, INFINITY), 2.0, 0);
  EXPECT_THROW(lp_norm(f, 0.5), std::invalid_argument);
}

TEST(LpNorm, VectorValuedUsesValueNorm) {
  CubeFunction f(1, 2, {3.0, 4.0, 0.0, 0.0});
  EXPECT_NEAR(lp_norm(f, INFINITY, ValueNorm(2)), 5.0, 1e-15);
  EXPECT_NEAR(lp_norm(f, INFINITY, ValueNorm(1)), 7.0, 1e-15);
  EXPECT_NEAR(lp_norm(f, INFINITY, ValueNorm::infinity()), 4.0, 1e-15);
  EXPECT_NEAR(lp_norm(f, 1, ValueNorm(2)), 2.5, 1e-15);
}

TEST(ValueNorm, AxiomsOnRandomVectors) {
  Xoshiro256 rng(14);
  for (double q : {1.0, 1.5, 2.0, 3.0, 4.0, kInf}) {
    ValueNorm nm(q);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = normal_vector(rng, 5), b = normal_vector(rng, 5), s(a);
      for (int i = 0; i < 5; ++i) s[i] += b[i];
      const double c = rng.uniform(-3, 3);
      std::vector<double> ca(a);
      for (auto& v : ca) v *= c;
      auto N = [&](const std::vector<double>& v) { return nm(std::span<const double>(v)); };
      EXPECT_LE(N(s), N(a) + N(b) + 1e-12);
      EXPECT_NEAR(N(ca), std::abs(c) * N(a), 1e-12 * N(a));
      EXPECT_GT(N(a), 0);
    }
  }
  EXPECT_THROW(ValueNorm(0.9), std::invalid_argument);
}

TEST(Derivatives, LaplacianOfCharacter) {
  auto f = character_function(3, SubsetMask::of({0, 1}));
  auto lf = laplacian(f);
  for (std::uint32_t x = 0; x < 8; ++x) EXPECT_DOUBLE_EQ(lf(x), 2 * f(x));
}

TEST(Derivatives, GradientOfSum) {
  auto f = CubeFunction::generate(2, [](std::uint32_t x) { return character(1, x) + character(2, x); });
  auto g = gradient_field(f);
  for (std::uint32_t x = 0; x < 4; ++x) EXPECT_NEAR(g(x), std::sqrt(2.0), 1e-15);
}

TEST(Derivatives, PartialOfCharacterIsIndicatorTimesCharacter) {
  const int n = 4;
  for (std::uint32_t S = 0; S < 16; ++S)
    for (int j = 0; j < n; ++j) {
      auto f = character_function(n, SubsetMask(S));
      auto d = partial_d(f, j);
      const double ind = SubsetMask(S).contains(j) ? 1.0 : 0.0;
      for (std::uint32_t x = 0; x < 16; ++x) EXPECT_EQ(d(x), ind * f(x));
    }
}

TEST(Derivatives, SumOfPartialsIsSpectralLaplacian) {
  Xoshiro256 rng(15);
  auto f = random_function(6, rng);
  std::vector<double> sum(f.points(), 0.0);
  for (int j = 0; j < 6; ++j) {
    auto d = partial_d(f, j);
    for (std::uint32_t x = 0; x < f.points(); ++x) sum[x] += d(x);
  }
  auto spectral = multiplier(f, [](int k) { return static_cast<double>(k); });
  EXPECT_LT(max_diff(sum, spectral.values()), 1e-12);
  EXPECT_LT(max_diff(laplacian(f), spectral), 1e-12);
}

TEST(Derivatives, ScalarGradientMatchesDirectFormula) {
  Xoshiro256 rng(16);
  auto f = random_function(5, rng);
  auto g = gradient_field(f, ValueNorm(2));
  for (std::uint32_t x = 0; x < f.points(); ++x) {
    double acc = 0;
    for (int j = 0; j < 5; ++j) acc += std::pow((f(x) - f(x ^ (1u << j))) / 2, 2);
    EXPECT_NEAR(g(x), std::sqrt(acc), 1e-14);
  }
  EXPECT_THROW(partial_d(f, 5), std::invalid_argument);
}

TEST(Multiplier, HeatEndpoints) {
  Xoshiro256 rng(17);
  auto f = random_function(6, rng);
  EXPECT_LT(max_diff(heat(f, 1.0), f), 1e-13);
  auto h0 = heat(f, 0.0);
  for (std::uint32_t x = 0; x < f.points(); ++x) EXPECT_NEAR(h0(x), f.spectrum()[SubsetMask(0)], 1e-14);
}

TEST(Multiplier, SemigroupProperty) {
  Xoshiro256 rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_function(7, rng);
    const double w1 = rng.uniform(-1, 1), w2 = rng.uniform(-1, 1);
    EXPECT_LT(max_diff(heat(heat(f, w1), w2), heat(f, w1 * w2)), 1e-12);
  }
}

TEST(Multiplier, ComplexParameter) {
  Xoshiro256 rng(19);
  auto f = random_function(5, rng);
  const std::complex<double> w(0.3, 0.4);
  auto h = heat(f, w);
  static_assert(std::is_same_v<decltype(h), ComplexCubeFunction>);
  // Direct evaluation sum_S w^{|S|} fhat(S) eps^S.
  for (std::uint32_t x = 0; x < f.points(); ++x) {
    std::complex<double> v = 0;
    for (std::uint32_t S = 0; S < f.points(); ++S)
      v += std::pow(w, std::popcount(S)) * f.spectrum()[SubsetMask(S)] * character(S, x);
    EXPECT_LT(std::abs(h(x) - v), 1e-13);
  }
}

TEST(Multiplier, FlipSymmetry) {
  Xoshiro256 rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_function(6, rng);
    const double w = rng.uniform(-1, 1);
    EXPECT_LT(max_diff(heat(f, -w), reflect(heat(f, w))), 1e-13);
  }
}

TEST(Multiplier, RealSemigroupIsContractive) {
  Xoshiro256 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_function(6, rng);
    const double x = rng.uniform(-1, 1);
    for (double p : {1.0, 1.5, 2.0, 4.0, kInf})
      EXPECT_LE(lp_norm(heat(f, x), p), lp_norm(f, p) * (1 + 1e-12));
  }
}

TEST(Projection, Examples) {
  auto f = CubeFunction::generate(2, [](std::uint32_t x) { return 1 + character(1, x) + character(3, x); });
  auto p = project_band(f, 1, 1);
  for (std::uint32_t x = 0; x < 4; ++x) EXPECT_NEAR(p(x), character(1, x), 1e-15);
  EXPECT_LT(max_diff(project_band(f, 0, 2), f), 1e-15);
  EXPECT_THROW(project_band(f, 2, 1), std::invalid_argument);
  EXPECT_THROW(project_band(f, 0, 3), std::invalid_argument);
}

TEST(Projection, ComplementaryBandsSum) {
  Xoshiro256 rng(22);
  for (int d = 0; d < 6; ++d) {
    auto f = random_function(6, rng);
    auto low = project_band(f, 0, d), high = project_band(f, d + 1, 6);
    std::vector<double> sum(f.points());
    for (std::uint32_t x = 0; x < f.points(); ++x) sum[x] = low(x) + high(x);
    EXPECT_LT(max_diff(sum, f.values()), 1e-13);
    EXPECT_LE(high.spectrum().degree(), 6);
    for (std::uint32_t S = 0; S < f.points(); ++S) {
      if (std::popcount(S) <= d) EXPECT_NEAR(high.spectrum()[SubsetMask(S)], 0, 1e-15);
      else EXPECT_NEAR(low.spectrum()[SubsetMask(S)], 0, 1e-15);
    }
  }
}

TEST(Properties, Parseval) {
  Xoshiro256 rng(23);
  for (int n = 1; n <= 12; ++n) {
    auto f = random_function(n, rng);
    double energy = 0;
    for (double c : f.spectrum().raw()) energy += c * c;
    const double l2 = lp_norm(f, 2);
    EXPECT_NEAR(energy, l2 * l2, 1e-12 * l2 * l2) << "n=" << n;
  }
}

TEST(Properties, RandomBandFunctionRespectsBand) {
  Xoshiro256 rng(24);
  auto f = random_band_function(8, 2, 4, rng);
  for (std::uint32_t S = 0; S < f.points(); ++S) {
    const int k = std::popcount(S);
    if (k < 2 || k > 4) EXPECT_NEAR(f.spectrum()[SubsetMask(S)], 0, 1e-14);
  }
}

TEST(Json, RoundTripValues) {
  Xoshiro256 rng(25);
  auto f = random_function(4, rng, 2);
  auto j = to_json(f, ValueNorm(4));
  auto g = function_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(g.values(), f.values());
  EXPECT_EQ(value_norm_from_json(j).q, 4);
  EXPECT_TRUE(value_norm_from_json(to_json(f, ValueNorm::infinity())).is_infinite());
}

TEST(Json, RoundTripSpectrum) {
  auto f = character_function(3, SubsetMask(5));
  auto j = to_json(f.spectrum());
  EXPECT_EQ(j["coeffs"].size(), 1u);
  EXPECT_TRUE(j["coeffs"].contains("5"));
  auto s = spectrum_from_json(j);
  EXPECT_EQ(s.raw(), f.spectrum().raw());
  EXPECT_THROW(spectrum_from_json(nlohmann::json::parse(R"({"n":2,"coeffs":{"9":[1]}})")), std::invalid_argument);
  EXPECT_THROW(function_from_json(nlohmann::json::parse(R"({"n":2,"values":[1,2,3]})")), std::invalid_argument);
}
