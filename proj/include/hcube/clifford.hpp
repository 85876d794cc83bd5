#pragma once

/// \file clifford.hpp
/// \brief Dense matrix algebra generated by Q_j, P_j on n <= 6 qubits: the lift
/// f -> T_f = sum_A fhat(A) Q_A, the rotation automorphism, normalized Schatten
/// norms, and the derivative, conjugation, Bernstein and Khintchine checks.
///
/// Site j of a word acts on bit j of the basis index, the same bit that encodes
/// eps_j of a cube point. With this layout Q_A e_c = e_{c xor A}, and T_f is
/// diagonal in the Hadamard basis with eigenvalue f(x) on the vector indexed by x.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcube/cube.hpp"
#include "hcube/random.hpp"

namespace hcube::clifford {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Site = Eigen::Matrix2cd;
using cube::CubeFunction;
using cube::Spectrum;
using cube::SubsetMask;

inline constexpr int kMaxQubits = 6;

/// The sign found in d/dtheta R(theta) T_f = sign * R(theta)(sum_j P_j d_j T_f).
/// Fixed by the 2x2 case: d/dtheta (cos Q + sin P) = -sin Q + cos P = R(theta) P.
inline constexpr int kDerivativeSign = +1;

inline Site site_identity() { return Site::Identity(); }

inline Site site_q() {
  Site s;
  s << 0, 1, 1, 0;
  return s;
}

inline Site site_p() {
  Site s;
  s << 0, cplx(0, 1), cplx(0, -1), 0;
  return s;
}

enum class Letter : char { I = 'I', Q = 'Q', P = 'P' };

inline Site site_of(Letter l) {
  switch (l) {
    case Letter::Q: return site_q();
    case Letter::P: return site_p();
    default: return site_identity();
  }
}

/// A product of single-site letters; letters[j] sits on qubit j.
struct PauliWord {
  std::vector<Letter> letters;

  [[nodiscard]] int n() const noexcept { return static_cast<int>(letters.size()); }

  /// "QIP" puts Q on site 0 and P on site 2.
  static PauliWord parse(std::string_view text) {
    PauliWord w;
    for (char ch : text) {
      if (ch != 'I' && ch != 'Q' && ch != 'P') throw std::invalid_argument("PauliWord: letters are I, Q, P");
      w.letters.push_back(static_cast<Letter>(ch));
    }
    return w;
  }

  /// Q_A.
  static PauliWord q(int n, SubsetMask A) {
    PauliWord w;
    w.letters.assign(n, Letter::I);
    for (int j = 0; j < n; ++j)
      if (A.contains(j)) w.letters[j] = Letter::Q;
    return w;
  }

  /// P_j.
  static PauliWord p(int n, int j) {
    PauliWord w;
    w.letters.assign(n, Letter::I);
    w.letters.at(j) = Letter::P;
    return w;
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (auto l : letters) s.push_back(static_cast<char>(l));
    return s;
  }
};

namespace detail {

inline void check_qubits(int n) {
  if (n < 0 || n > kMaxQubits) throw std::invalid_argument("clifford: need 0 <= n <= 6 qubits");
}

inline void check_scalar(const CubeFunction& f) {
  if (!f.is_scalar()) throw std::invalid_argument("clifford: only scalar functions lift to matrices");
  check_qubits(f.n());
}

/// (2^{-n} sum v^p)^{1/p}, scaled against overflow; p = inf gives the max.
inline double power_mean(const Eigen::VectorXd& v, double p) {
  const double mx = v.cwiseAbs().maxCoeff();
  if (std::isinf(p) || mx == 0) return mx;
  double acc = 0;
  for (double x : v) acc += std::pow(std::abs(x) / mx, p);
  return mx * std::pow(acc / static_cast<double>(v.size()), 1.0 / p);
}

/// Coefficients with |c| below this fraction of the largest do not count toward the degree.
inline constexpr double kDegreeFloor = 1e-12;

inline int effective_degree(const Spectrum& s) {
  double mx = 0;
  for (double c : s.raw()) mx = std::max(mx, std::abs(c));
  int d = 0;
  for (std::uint32_t S = 0; S < s.subsets(); ++S)
    if (std::abs(s.raw()[S]) > kDegreeFloor * mx) d = std::max(d, std::popcount(S));
  return d;
}

}  // namespace detail

/// Qubit count of a 2^n x 2^n matrix.
inline int qubits(const Matrix& A) {
  const auto dim = static_cast<std::uint64_t>(A.rows());
  if (A.rows() != A.cols() || dim == 0 || !std::has_single_bit(dim))
    throw std::invalid_argument("clifford: matrix must be 2^n x 2^n");
  const int n = std::countr_zero(dim);
  detail::check_qubits(n);
  return n;
}

/// Tensor product with sites[j] acting on bit j of the basis index.
inline Matrix tensor(const std::vector<Site>& sites) {
  const int n = static_cast<int>(sites.size());
  detail::check_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) {
      cplx v = 1.0;
      for (int j = 0; j < n && v != 0.0; ++j) v *= sites[j]((r >> j) & 1, (c >> j) & 1);
      out(r, c) = v;
    }
  return out;
}

inline Matrix build(const PauliWord& w) {
  std::vector<Site> sites;
  sites.reserve(w.letters.size());
  for (auto l : w.letters) sites.push_back(site_of(l));
  return tensor(sites);
}

inline Matrix q_monomial(int n, SubsetMask A) { return build(PauliWord::q(n, A)); }
inline Matrix p_site(int n, int j) { return build(PauliWord::p(n, j)); }

/// tr with the normalization tr(I) = 1.
inline cplx normalized_trace(const Matrix& A) { return A.trace() / static_cast<double>(A.rows()); }

/// T = sum_A s(A) Q_A, whose (r, c) entry is s(r xor c).
inline Matrix lift(const Spectrum& s) {
  if (s.m() != 1) throw std::invalid_argument("lift: only scalar functions lift to matrices");
  detail::check_qubits(s.n());
  const Eigen::Index dim = Eigen::Index{1} << s.n();
  Matrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) out(r, c) = s.raw()[static_cast<std::size_t>(r ^ c)];
  return out;
}

inline Matrix lift(const CubeFunction& f) {
  detail::check_scalar(f);
  return lift(f.spectrum());
}

/// Spectrum of d_j f: coefficient of Q_B is fhat(B + j) for B not containing j.
inline Spectrum partial_spectrum(const Spectrum& s, int j) {
  if (j < 0 || j >= s.n()) throw std::invalid_argument("partial_spectrum: coordinate out of range");
  Spectrum out(s.n(), 1);
  const std::uint32_t bit = 1U << j;
  for (std::uint32_t B = 0; B < s.subsets(); ++B)
    if (!(B & bit)) out.raw()[B] = s.raw()[B | bit];
  return out;
}

/// d_j T_f.
inline Matrix partial_lift(const CubeFunction& f, int j) {
  detail::check_scalar(f);
  return lift(partial_spectrum(f.spectrum(), j));
}

/// sum_j signs[j] P_j d_j T_f.
inline Matrix signed_derivative_sum(const CubeFunction& f, const std::vector<double>& signs) {
  detail::check_scalar(f);
  const int n = f.n();
  if (static_cast<int>(signs.size()) != n) throw std::invalid_argument("signed_derivative_sum: one sign per site");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j)
    if (signs[j] != 0.0) out += signs[j] * (p_site(n, j) * partial_lift(f, j));
  return out;
}

/// sum_j P_j d_j T_f.
inline Matrix derivative_sum(const CubeFunction& f) {
  return signed_derivative_sum(f, std::vector<double>(f.n(), 1.0));
}

/// Normalized Schatten norm (2^{-n} sum sigma_i^p)^{1/p}; p = inf is the operator norm.
inline double schatten_norm(const Matrix& A, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: need p >= 1");
  qubits(A);
  if (A.isApprox(A.adjoint(), 1e-14)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
    return detail::power_mean(es.eigenvalues().cwiseAbs(), p);
  }
  Eigen::JacobiSVD<Matrix> svd(A);
  return detail::power_mean(svd.singularValues(), p);
}

/// R(theta)^* A R(theta), R(theta) the n-fold tensor power of diag(1, e^{i theta}).
/// Entry (r, c) picks up the phase e^{i theta (|c| - |r|)}.
inline Matrix rotate(const Matrix& A, double theta) {
  const int n = qubits(A);
  std::vector<cplx> phase(n + 1);
  for (int k = 0; k <= n; ++k) phase[k] = std::polar(1.0, theta * k);
  Matrix out(A.rows(), A.cols());
  for (Eigen::Index c = 0; c < A.cols(); ++c)
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      const int k = std::popcount(static_cast<std::uint64_t>(c)) - std::popcount(static_cast<std::uint64_t>(r));
      out(r, c) = A(r, c) * (k >= 0 ? phase[k] : std::conj(phase[-k]));
    }
  return out;
}

/// d/dtheta R(theta) T_f, term by term: R(theta) Q_A is the product over j in A of
/// (cos Q_j + sin P_j), differentiated one factor at a time.
inline Matrix rotated_derivative(const CubeFunction& f, double theta) {
  detail::check_scalar(f);
  const int n = f.n();
  const auto& s = f.spectrum();
  const Site up = std::cos(theta) * site_q() + std::sin(theta) * site_p();
  const Site dup = -std::sin(theta) * site_q() + std::cos(theta) * site_p();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  std::vector<Site> sites(n);
  for (std::uint32_t A = 1; A < s.subsets(); ++A) {
    const double c = s.raw()[A];
    if (c == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (!((A >> j) & 1U)) continue;
      for (int i = 0; i < n; ++i) sites[i] = i == j ? dup : (((A >> i) & 1U) ? up : site_identity());
      out += c * tensor(sites);
    }
  }
  return out;
}

struct DerivativeCheck {
  double discrepancy = 0;        ///< Frobenius distance for the better sign
  double other = 0;              ///< the same for the opposite sign
  int sign = 0;                  ///< +1 or -1; 0 when both sides vanish
  double finite_difference = 0;  ///< Frobenius distance of the exact derivative to a central difference
};

/// Compares d/dtheta R(theta) T_f with +-R(theta)(sum_j P_j d_j T_f).
/// Throws std::runtime_error if neither sign agrees to 1e-8.
inline DerivativeCheck derivative_identity_check(const CubeFunction& f, double theta, double h = 1e-5) {
  detail::check_scalar(f);
  if (f.n() > 5) throw std::invalid_argument("derivative_identity_check: need n <= 5");
  const Matrix exact = rotated_derivative(f, theta);
  const Matrix candidate = rotate(derivative_sum(f), theta);
  const double plus = (exact - candidate).norm(), minus = (exact + candidate).norm();
  DerivativeCheck out;
  out.discrepancy = std::min(plus, minus);
  out.other = std::max(plus, minus);
  const double scale = std::max(1.0, exact.norm());
  if (out.other <= 1e-12 * scale) out.sign = 0;
  else out.sign = plus <= minus ? +1 : -1;
  const Matrix T = lift(f);
  const Matrix fd = (rotate(T, theta + h) - rotate(T, theta - h)) / (2 * h);
  out.finite_difference = (fd - exact).norm();
  if (out.discrepancy > 1e-8 * scale)
    throw std::runtime_error("derivative_identity_check: neither sign matches (" + std::to_string(out.discrepancy) +
                             ")");
  return out;
}

/// max entry of |Q_k (sum_j P_j d_j T_f) Q_k - sum_j eps^(k)_j P_j d_j T_f|,
/// eps^(k)_j = -1 iff j = k (0-based k).
inline double sign_conjugation_check(const CubeFunction& f, int k) {
  detail::check_scalar(f);
  if (k < 0 || k >= f.n()) throw std::invalid_argument("sign_conjugation_check: site out of range");
  const int n = f.n();
  const Matrix Qk = q_monomial(n, SubsetMask(1U << k));
  std::vector<double> signs(n, 1.0);
  signs[k] = -1.0;
  const Matrix lhs = Qk * derivative_sum(f) * Qk;
  return (lhs - signed_derivative_sum(f, signs)).cwiseAbs().maxCoeff();
}

/// max_theta ||A_f'(theta)||_p / (2d max_theta ||A_f(theta)||_p), A_f(theta) = R(theta) T_f.
inline double fejer_bernstein_check(const CubeFunction& f, int d, double p, const std::vector<double>& grid) {
  detail::check_scalar(f);
  if (grid.empty()) throw std::invalid_argument("fejer_bernstein_check: empty grid");
  if (detail::effective_degree(f.spectrum()) > d) throw std::invalid_argument("fejer_bernstein_check: f has degree > d");
  const Matrix T = lift(f);
  double top = 0, value = 0;
  for (double th : grid) {
    top = std::max(top, schatten_norm(rotated_derivative(f, th), p));
    value = std::max(value, schatten_norm(rotate(T, th), p));
  }
  if (top == 0) return 0;
  return top / (2.0 * d * value);
}

/// (sum_j (d_j T_f)^* d_j T_f)^{1/2}.
inline Matrix square_function(const CubeFunction& f) {
  detail::check_scalar(f);
  const Eigen::Index dim = Eigen::Index{1} << f.n();
  Matrix S = Matrix::Zero(dim, dim);
  for (int j = 0; j < f.n(); ++j) {
    const Matrix D = partial_lift(f, j);
    S += D.adjoint() * D;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

struct KhintchineSides {
  double average = 0;          ///< E_eps || sum_j eps_j P_j d_j T_f ||_p over all sign patterns
  double square_function = 0;  ///< 2 || (sum_j (d_j T_f)^* d_j T_f)^{1/2} ||_p
  double ratio = 0;            ///< average / square_function (0 when both vanish)
};

inline KhintchineSides nc_khintchine_sides(const CubeFunction& f, double p) {
  detail::check_scalar(f);
  if (!(p >= 2.0)) throw std::invalid_argument("nc_khintchine_sides: need p >= 2");
  const int n = f.n();
  if (n > 5) throw std::invalid_argument("nc_khintchine_sides: need n <= 5");
  std::vector<Matrix> terms;
  for (int j = 0; j < n; ++j) terms.push_back(p_site(n, j) * partial_lift(f, j));
  const Eigen::Index dim = Eigen::Index{1} << n;
  KhintchineSides out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    Matrix M = Matrix::Zero(dim, dim);
    for (int j = 0; j < n; ++j) M += ((mask >> j) & 1U ? -1.0 : 1.0) * terms[j];
    out.average += schatten_norm(M, p);
  }
  out.average /= static_cast<double>(1U << n);
  out.square_function = 2.0 * schatten_norm(square_function(f), p);
  out.ratio = out.square_function > 0 ? out.average / out.square_function : 0.0;
  return out;
}

struct NcbmRow {
  int n = 0;
  int d = 0;
  double p = 0;
  int trials = 0;
  double max_constant = 0;   ///< max over trials of || |grad f| ||_p / (d ||f||_p)
  double mean_constant = 0;
  double lift_defect = 0;    ///< max relative gap between ||square_function||_{S_p} and || |grad f| ||_p
  std::uint64_t seed = 0;
};

/// Observed constant in || |grad f| ||_p <= C d ||f||_p over random f of degree <= d.
inline NcbmRow ncbm_check(int n, int d, double p, int trials, std::uint64_t seed) {
  detail::check_qubits(n);
  if (!(p >= 2.0)) throw std::invalid_argument("ncbm_check: need p >= 2");
  if (d < 1 || d > n) throw std::invalid_argument("ncbm_check: need 1 <= d <= n");
  if (trials < 1) throw std::invalid_argument("ncbm_check: need trials >= 1");
  NcbmRow row{n, d, p, trials, 0, 0, 0, seed};
  Xoshiro256 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto f = cube::random_band_function(n, 0, d, rng);
    const double grad = cube::lp_norm(cube::gradient_field(f), p);
    const double c = grad / (d * cube::lp_norm(f, p));
    row.max_constant = std::max(row.max_constant, c);
    row.mean_constant += c / trials;
    const double lifted = schatten_norm(square_function(f), p);
    row.lift_defect = std::max(row.lift_defect, std::abs(lifted - grad) / std::max(grad, 1e-300));
  }
  return row;
}

/// Keeps the diagonal entries only.
inline Matrix diag_part(const Matrix& A) {
  Matrix out = Matrix::Zero(A.rows(), A.cols());
  out.diagonal() = A.diagonal();
  return out;
}

inline bool diag_contraction_check(const Matrix& A, double p) {
  return schatten_norm(diag_part(A), p) <= schatten_norm(A, p) * (1 + 1e-12) + 1e-300;
}

/// Keeps the Q-only words of A in the basis of words over I, Q, P, QP:
/// the coefficient of Q_B is tr(Q_B A) = 2^{-n} sum_r A(r xor B, r).
inline Matrix project_q(const Matrix& A) {
  qubits(A);
  const Eigen::Index dim = A.rows();
  std::vector<cplx> coef(static_cast<std::size_t>(dim), cplx{});
  for (Eigen::Index B = 0; B < dim; ++B) {
    for (Eigen::Index r = 0; r < dim; ++r) coef[B] += A(r ^ B, r);
    coef[B] /= static_cast<double>(dim);
  }
  Matrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) out(r, c) = coef[static_cast<std::size_t>(r ^ c)];
  return out;
}

/// A matrix with i.i.d. complex normal entries.
inline Matrix random_matrix(int n, Xoshiro256& rng) {
  detail::check_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) out(r, c) = cplx(rng.normal(), rng.normal());
  return out;
}

}  // namespace hcube::clifford
