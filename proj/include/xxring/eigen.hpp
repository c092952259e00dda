#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "xxring/error.hpp"
#include "xxring/matrix.hpp"

namespace xxring {

/// Eigenvalues in ascending order; eigenvectors are the matching columns.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr std::size_t kMaxEigenDimension = 1024;
inline constexpr int kMaxJacobiSweeps = 100;

namespace detail {

inline double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return s;
}

/// One complex Jacobi rotation annihilating a(p, q). The unitary is
/// diag(1, e^{-i phi}) composed with the real rotation [[c, s], [-s, c]].
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex upp = c;
  const Complex upq = s;
  const Complex uqp = -s * std::conj(phase);
  const Complex uqq = c * std::conj(phase);

  const std::size_t n = a.rows();
  // A <- A U
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  // A <- U^dagger A
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Deterministic: identical input yields bit-identical output. Equal
/// eigenvalues keep the order of their original diagonal positions.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NonHermitianInput, "matrix is not square");
  const std::size_t n = m.rows();
  if (n > kMaxEigenDimension)
    throw Error(ErrorCode::UnsupportedSize, "dimension " + std::to_string(n) + " exceeds 1024");
  if (!is_hermitian(m, kHermitianTol))
    throw Error(ErrorCode::NonHermitianInput, "M differs from M^dagger by more than 1e-12");

  ComplexMatrix a = m;
  // Symmetrize so round-off in the input cannot leak imaginary diagonals.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale2 = 0.0;
  for (const auto& z : a.data()) scale2 += std::norm(z);
  const double eps = std::numeric_limits<double>::epsilon();

  bool converged = n <= 1;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    const double off = detail::off_diagonal_norm2(a);
    if (off <= eps * eps * scale2 || off == 0.0) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Drop entries that can no longer move either diagonal element.
        const double dp = std::abs(a(p, p).real());
        const double dq = std::abs(a(q, q).real());
        if (sweep > 3 && dp + 100.0 * mag == dp && dq + 100.0 * mag == dq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        detail::jacobi_rotate(a, v, p, q);
      }
  }
  if (!converged) {
    const double off = detail::off_diagonal_norm2(a);
    if (!(off <= eps * eps * scale2 || off == 0.0))
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi iteration exceeded " + std::to_string(kMaxJacobiSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// V diag(f(values)) V^dagger.
template <class F>
ComplexMatrix spectral_map(const EigenDecomposition& eig, F&& f) {
  const std::size_t n = eig.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = eig.vectors(r, k) * fk;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(eig.vectors(c, k));
    }
  }
  return out;
}

inline constexpr double kPsdClampTol = 1e-12;
inline constexpr double kPsdRejectTol = 1e-9;

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-9, 0) are treated as round-off and clamped to zero.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const EigenDecomposition eig = hermitian_eigen(m);
  if (!eig.values.empty() && eig.values.front() < -kPsdRejectTol)
    throw Error(ErrorCode::NotPositiveSemidefinite,
                "minimum eigenvalue " + std::to_string(eig.values.front()));
  // Eigenvalues within roundoff of zero are exact zeros; taking their root
  // would turn 1e-17 noise into 3e-9.
  double scale = 0.0;
  for (double x : eig.values) scale = std::max(scale, std::abs(x));
  const double floor = static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * scale;
  return spectral_map(eig, [floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
}

/// Singular values in descending order, obtained from the Hermitian
/// embedding [[0, A], [A^dagger, 0]] whose spectrum is {+-sigma_i}. Working
/// on the embedding avoids squaring A, so small singular values keep their
/// absolute accuracy.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  ComplexMatrix h(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      h(i, r + j) = a(i, j);
      h(r + j, i) = std::conj(a(i, j));
    }
  const EigenDecomposition eig = hermitian_eigen(h);
  const std::size_t k = std::min(r, c);
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = std::max(eig.values[r + c - 1 - i], 0.0);
  return out;
}

}  // namespace xxring
