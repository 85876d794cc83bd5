#pragma once

/// \file cube.hpp
/// \brief Walsh-Fourier analysis of scalar- and vector-valued functions on the
/// Hamming cube {-1,1}^n with the uniform probability measure.
///
/// Conventions used throughout the library:
///  - A point eps is encoded as a bitmask x with bit i set iff eps_i = -1.
///  - A subset S of coordinates is encoded as a bitmask with bit i set iff i in S.
///  - The Walsh character is eps^S(x) = (-1)^{popcount(S & x)}.
///  - Coefficients are expectations: fhat(S) = E_eps[f(eps) eps^S], so that
///    Parseval reads E|f|^2 = sum_S fhat(S)^2 without extra factors.
///  - D_j f(eps) = (f(eps) - f(sigma_j eps)) / 2, so D_j eps^S = [j in S] eps^S
///    and the Laplacian sum_j D_j has eigenvalue |S| on eps^S.
///
/// Coordinates are 0-based in the API.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "hcube/random.hpp"

namespace hcube::cube {

inline constexpr int kMaxScalarDim = 24;
inline constexpr int kMaxVectorDim = 14;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// A subset of {0, ..., n-1} stored as a bitmask.
struct SubsetMask {
  std::uint32_t bits = 0;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t b) : bits(b) {}

  [[nodiscard]] constexpr int size() const noexcept { return std::popcount(bits); }
  [[nodiscard]] constexpr bool contains(int j) const noexcept { return (bits >> j) & 1U; }
  [[nodiscard]] constexpr SubsetMask with(int j) const noexcept { return SubsetMask(bits | (1U << j)); }
  [[nodiscard]] constexpr SubsetMask without(int j) const noexcept { return SubsetMask(bits & ~(1U << j)); }

  static constexpr SubsetMask of(std::initializer_list<int> coords) {
    std::uint32_t b = 0;
    for (int c : coords) b |= 1U << c;
    return SubsetMask(b);
  }

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
};

/// Character value eps^S at the point encoded by `point`.
constexpr double character(std::uint32_t subset, std::uint32_t point) noexcept {
  return (std::popcount(subset & point) & 1) ? -1.0 : 1.0;
}

/// Norm on the value space R^m: |v|_X = (sum |v_i|^q)^{1/q}, q in [1, inf].
struct ValueNorm {
  double q = 2.0;

  constexpr ValueNorm() = default;
  explicit ValueNorm(double exponent) : q(exponent) {
    if (!(q >= 1.0)) throw std::invalid_argument("ValueNorm: q must be >= 1");
  }

  static ValueNorm infinity() { return ValueNorm(std::numeric_limits<double>::infinity()); }
  [[nodiscard]] bool is_infinite() const noexcept { return std::isinf(q); }

  template <class T>
  [[nodiscard]] double operator()(std::span<const T> v) const {
    using std::abs;
    if (v.size() == 1) return abs(v[0]);
    if (is_infinite()) {
      double m = 0;
      for (const auto& x : v) m = std::max(m, static_cast<double>(abs(x)));
      return m;
    }
    if (q == 2.0) {
      double s = 0;
      for (const auto& x : v) s += std::norm(std::complex<double>(x));
      return std::sqrt(s);
    }
    if (q == 1.0) {
      double s = 0;
      for (const auto& x : v) s += abs(x);
      return s;
    }
    double scale = 0;
    for (const auto& x : v) scale = std::max(scale, static_cast<double>(abs(x)));
    if (scale == 0) return 0;
    double s = 0;
    for (const auto& x : v) s += std::pow(abs(x) / scale, q);
    return scale * std::pow(s, 1.0 / q);
  }
};

namespace detail {

inline void check_dims(int n, int m) {
  if (n < 0 || m < 1) throw std::invalid_argument("cube: invalid dimensions");
  if (n > kMaxScalarDim) throw std::invalid_argument("cube: dimension overflow (n > 24)");
  if (m > 1 && n > kMaxVectorDim)
    throw std::invalid_argument("cube: dimension overflow (vector-valued n > 14)");
}

/// Unnormalized in-place Walsh-Hadamard butterfly on point-major data with m
/// components per point.
template <class T>
void fwht_inplace(std::vector<T>& data, int n, int m) {
  const std::size_t points = std::size_t{1} << n;
  for (std::size_t h = 1; h < points; h <<= 1) {
    for (std::size_t block = 0; block < points; block += 2 * h) {
      for (std::size_t i = block; i < block + h; ++i) {
        T* a = data.data() + i * m;
        T* b = data.data() + (i + h) * m;
        for (int c = 0; c < m; ++c) {
          const T u = a[c], v = b[c];
          a[c] = u + v;
          b[c] = u - v;
        }
      }
    }
  }
}

template <class T>
bool all_finite(const std::vector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) {
    if constexpr (is_complex_v<T>)
      return std::isfinite(x.real()) && std::isfinite(x.imag());
    else
      return std::isfinite(x);
  });
}

}  // namespace detail

/// Walsh spectrum of a function on the cube: for every subset S a coefficient
/// vector in T^m. Stored densely, subset-major.
template <class T>
class BasicSpectrum {
public:
  using value_type = T;

  BasicSpectrum() = default;
  BasicSpectrum(int n, int m) : n_(n), m_(m) {
    detail::check_dims(n, m);
    coeffs_.assign((std::size_t{1} << n) * m, T{});
  }
  BasicSpectrum(int n, int m, std::vector<T> coeffs) : n_(n), m_(m), coeffs_(std::move(coeffs)) {
    detail::check_dims(n, m);
    if (coeffs_.size() != (std::size_t{1} << n) * m)
      throw std::invalid_argument("Spectrum: coefficient count must be 2^n * m");
    if (!detail::all_finite(coeffs_)) throw std::invalid_argument("Spectrum: non-finite coefficient");
  }

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] std::size_t subsets() const noexcept { return std::size_t{1} << n_; }

  [[nodiscard]] std::span<const T> at(SubsetMask s) const {
    return {coeffs_.data() + std::size_t{s.bits} * m_, static_cast<std::size_t>(m_)};
  }
  [[nodiscard]] std::span<T> at(SubsetMask s) {
    return {coeffs_.data() + std::size_t{s.bits} * m_, static_cast<std::size_t>(m_)};
  }
  /// Scalar coefficient (component 0).
  [[nodiscard]] T operator[](SubsetMask s) const { return coeffs_[std::size_t{s.bits} * m_]; }

  [[nodiscard]] const std::vector<T>& raw() const noexcept { return coeffs_; }
  [[nodiscard]] std::vector<T>& raw() noexcept { return coeffs_; }

  /// Largest |S| carrying a nonzero coefficient (0 for the zero spectrum).
  [[nodiscard]] int degree() const {
    int d = 0;
    for (std::uint32_t s = 0; s < subsets(); ++s)
      for (int c = 0; c < m_; ++c)
        if (coeffs_[std::size_t{s} * m_ + c] != T{}) d = std::max(d, std::popcount(s));
    return d;
  }

private:
  int n_ = 0;
  int m_ = 1;
  std::vector<T> coeffs_;
};

template <class T>
class BasicCubeFunction;

template <class T>
BasicSpectrum<T> wht(const BasicCubeFunction<T>& f);

/// Immutable function on {-1,1}^n with values in T^m, with a lazily computed
/// and thread-safe cached spectrum. Copies share the cache.
template <class T>
class BasicCubeFunction {
public:
  using value_type = T;

  BasicCubeFunction() : BasicCubeFunction(0, 1, std::vector<T>{T{}}) {}

  BasicCubeFunction(int n, int m, std::vector<T> values) : n_(n), m_(m), values_(std::move(values)) {
    detail::check_dims(n, m);
    if (values_.size() != (std::size_t{1} << n) * m)
      throw std::invalid_argument("CubeFunction: value count must be 2^n * m");
    if (!detail::all_finite(values_)) throw std::invalid_argument("CubeFunction: non-finite value");
    cache_ = std::make_shared<Cache>();
  }

  /// Scalar function from point values.
  static BasicCubeFunction scalar(int n, std::vector<T> values) { return {n, 1, std::move(values)}; }

  /// Scalar function from a callable on point bitmasks.
  template <class F>
  static BasicCubeFunction generate(int n, F&& fn) {
    detail::check_dims(n, 1);
    std::vector<T> v(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = static_cast<T>(fn(x));
    return scalar(n, std::move(v));
  }

  static BasicCubeFunction constant(int n, T c) {
    return scalar(n, std::vector<T>(std::size_t{1} << n, c));
  }

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] std::size_t points() const noexcept { return std::size_t{1} << n_; }
  [[nodiscard]] bool is_scalar() const noexcept { return m_ == 1; }

  [[nodiscard]] std::span<const T> at(std::uint32_t point) const {
    return {values_.data() + std::size_t{point} * m_, static_cast<std::size_t>(m_)};
  }
  [[nodiscard]] T operator()(std::uint32_t point) const { return values_[std::size_t{point} * m_]; }
  [[nodiscard]] const std::vector<T>& values() const noexcept { return values_; }

  [[nodiscard]] const BasicSpectrum<T>& spectrum() const {
    std::call_once(cache_->once, [this] { cache_->spectrum = wht(*this); });
    return *cache_->spectrum;
  }

private:
  struct Cache {
    std::once_flag once;
    std::optional<BasicSpectrum<T>> spectrum;
  };

  int n_;
  int m_;
  std::vector<T> values_;
  std::shared_ptr<Cache> cache_;
};

using Spectrum = BasicSpectrum<double>;
using CubeFunction = BasicCubeFunction<double>;
using ComplexSpectrum = BasicSpectrum<std::complex<double>>;
using ComplexCubeFunction = BasicCubeFunction<std::complex<double>>;

/// Walsh transform: fhat(S) = E[f eps^S], computed with the fast butterfly.
template <class T>
BasicSpectrum<T> wht(const BasicCubeFunction<T>& f) {
  std::vector<T> data = f.values();
  detail::fwht_inplace(data, f.n(), f.m());
  const double scale = 1.0 / static_cast<double>(f.points());
  for (auto& x : data) x *= scale;
  return BasicSpectrum<T>(f.n(), f.m(), std::move(data));
}

/// Inverse transform: f(x) = sum_S fhat(S) eps^S(x).
template <class T>
BasicCubeFunction<T> inverse_wht(const BasicSpectrum<T>& s) {
  std::vector<T> data = s.raw();
  detail::fwht_inplace(data, s.n(), s.m());
  return BasicCubeFunction<T>(s.n(), s.m(), std::move(data));
}

/// (E |f|_X^p)^{1/p}, or max_eps |f(eps)|_X for p = inf.
template <class T>
double lp_norm(const BasicCubeFunction<T>& f, double p, const ValueNorm& xnorm = {}) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const std::size_t pts = f.points();
  if (std::isinf(p)) {
    double mx = 0;
    for (std::uint32_t x = 0; x < pts; ++x) mx = std::max(mx, xnorm(f.at(x)));
    return mx;
  }
  std::vector<double> mags(pts);
  double scale = 0;
  for (std::uint32_t x = 0; x < pts; ++x) {
    mags[x] = xnorm(f.at(x));
    scale = std::max(scale, mags[x]);
  }
  if (scale == 0) return 0;
  double acc = 0;
  if (p == 2.0) {
    for (double v : mags) acc += (v / scale) * (v / scale);
    return scale * std::sqrt(acc / static_cast<double>(pts));
  }
  for (double v : mags) acc += std::pow(v / scale, p);
  return scale * std::pow(acc / static_cast<double>(pts), 1.0 / p);
}

/// D_j f(eps) = (f(eps) - f(sigma_j eps)) / 2.
template <class T>
BasicCubeFunction<T> partial_d(const BasicCubeFunction<T>& f, int j) {
  if (j < 0 || j >= f.n()) throw std::invalid_argument("partial_d: coordinate out of range");
  const int m = f.m();
  const std::uint32_t flip = 1U << j;
  std::vector<T> out(f.values().size());
  for (std::uint32_t x = 0; x < f.points(); ++x) {
    auto a = f.at(x), b = f.at(x ^ flip);
    for (int c = 0; c < m; ++c) out[std::size_t{x} * m + c] = (a[c] - b[c]) * 0.5;
  }
  return {f.n(), m, std::move(out)};
}

/// Pointwise |grad f|_X(eps) = (sum_j |D_j f(eps)|_X^2)^{1/2}, a scalar function.
template <class T>
CubeFunction gradient_field(const BasicCubeFunction<T>& f, const ValueNorm& xnorm = {}) {
  const int n = f.n(), m = f.m();
  std::vector<double> out(f.points(), 0.0);
  std::vector<T> diff(m);
  for (std::uint32_t x = 0; x < f.points(); ++x) {
    double acc = 0;
    auto a = f.at(x);
    for (int j = 0; j < n; ++j) {
      auto b = f.at(x ^ (1U << j));
      for (int c = 0; c < m; ++c) diff[c] = (a[c] - b[c]) * 0.5;
      const double v = xnorm(std::span<const T>(diff));
      acc += v * v;
    }
    out[x] = std::sqrt(acc);
  }
  return CubeFunction::scalar(n, std::move(out));
}

/// Spectral multiplier: output spectrum is lambda(|S|) * fhat(S).
template <class T, class F>
auto multiplier(const BasicCubeFunction<T>& f, F&& lambda) {
  using L = std::invoke_result_t<F, int>;
  using R = std::conditional_t<is_complex_v<T> || is_complex_v<L>, std::complex<double>, double>;
  const auto& s = f.spectrum();
  const int n = f.n(), m = f.m();
  std::vector<R> factor(n + 1);
  for (int k = 0; k <= n; ++k) factor[k] = static_cast<R>(lambda(k));
  std::vector<R> coeffs(s.raw().size());
  for (std::uint32_t S = 0; S < s.subsets(); ++S) {
    const R lam = factor[std::popcount(S)];
    for (int c = 0; c < m; ++c) coeffs[std::size_t{S} * m + c] = lam * static_cast<R>(s.raw()[std::size_t{S} * m + c]);
  }
  return inverse_wht(BasicSpectrum<R>(n, m, std::move(coeffs)));
}

/// Delta f = sum_j D_j f, the multiplier |S|.
template <class T>
BasicCubeFunction<T> laplacian(const BasicCubeFunction<T>& f) {
  const int n = f.n(), m = f.m();
  std::vector<T> out(f.values().size(), T{});
  for (int j = 0; j < n; ++j) {
    const std::uint32_t flip = 1U << j;
    for (std::uint32_t x = 0; x < f.points(); ++x) {
      auto a = f.at(x), b = f.at(x ^ flip);
      for (int c = 0; c < m; ++c) out[std::size_t{x} * m + c] += (a[c] - b[c]) * 0.5;
    }
  }
  return {n, m, std::move(out)};
}

/// The semigroup element F(w, .) = sum_S w^{|S|} fhat(S) eps^S. With w = e^{-t}
/// this is e^{-t Delta} f.
template <class T, class W>
auto heat(const BasicCubeFunction<T>& f, W w) {
  return multiplier(f, [w](int k) {
    W r{1};
    for (int i = 0; i < k; ++i) r *= w;
    return r;
  });
}

/// Delta^beta f, the multiplier |S|^beta (with 0^beta = 0).
template <class T>
auto laplacian_power(const BasicCubeFunction<T>& f, double beta) {
  return multiplier(f, [beta](int k) { return k == 0 ? 0.0 : std::pow(static_cast<double>(k), beta); });
}

template <class T>
auto sqrt_laplacian(const BasicCubeFunction<T>& f) {
  return multiplier(f, [](int k) { return std::sqrt(static_cast<double>(k)); });
}

/// Keeps exactly the coefficients with lo <= |S| <= hi.
template <class T>
BasicCubeFunction<T> project_band(const BasicCubeFunction<T>& f, int lo, int hi) {
  if (lo < 0 || hi > f.n() || lo > hi) throw std::invalid_argument("project_band: empty degree band");
  return multiplier(f, [lo, hi](int k) { return (k >= lo && k <= hi) ? 1.0 : 0.0; });
}

/// Pointwise product of two scalar functions.
template <class T>
BasicCubeFunction<T> pointwise_product(const BasicCubeFunction<T>& a, const BasicCubeFunction<T>& b) {
  if (a.n() != b.n() || !a.is_scalar() || !b.is_scalar())
    throw std::invalid_argument("pointwise_product: shape mismatch");
  std::vector<T> out(a.points());
  for (std::uint32_t x = 0; x < a.points(); ++x) out[x] = a(x) * b(x);
  return BasicCubeFunction<T>::scalar(a.n(), std::move(out));
}

/// Pointwise reflection eps -> -eps.
template <class T>
BasicCubeFunction<T> reflect(const BasicCubeFunction<T>& f) {
  const std::uint32_t all = static_cast<std::uint32_t>(f.points() - 1);
  std::vector<T> out(f.values().size());
  for (std::uint32_t x = 0; x < f.points(); ++x) {
    auto src = f.at(x ^ all);
    std::copy(src.begin(), src.end(), out.begin() + std::size_t{x} * f.m());
  }
  return {f.n(), f.m(), std::move(out)};
}

/// Character eps^S as a scalar function.
inline CubeFunction character_function(int n, SubsetMask s) {
  return CubeFunction::generate(n, [s](std::uint32_t x) { return character(s.bits, x); });
}

/// Function with i.i.d. standard normal Walsh coefficients on lo <= |S| <= hi.
inline CubeFunction random_band_function(int n, int lo, int hi, Xoshiro256& rng, int m = 1) {
  detail::check_dims(n, m);
  Spectrum s(n, m);
  for (std::uint32_t S = 0; S < s.subsets(); ++S) {
    const int k = std::popcount(S);
    for (int c = 0; c < m; ++c) {
      const double g = rng.normal();
      if (k >= lo && k <= hi) s.raw()[std::size_t{S} * m + c] = g;
    }
  }
  return inverse_wht(s);
}

/// Function with i.i.d. standard normal point values.
inline CubeFunction random_function(int n, Xoshiro256& rng, int m = 1) {
  detail::check_dims(n, m);
  return CubeFunction(n, m, normal_vector(rng, (std::size_t{1} << n) * m));
}

/// Builds a function from a spectrum given only on selected subsets.
inline CubeFunction from_coefficients(int n, std::initializer_list<std::pair<SubsetMask, double>> terms) {
  Spectrum s(n, 1);
  for (const auto& [mask, v] : terms) s.raw()[mask.bits] += v;
  return inverse_wht(s);
}

}  // namespace hcube::cube
