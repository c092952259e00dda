#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "xxring/eigen.hpp"
#include "xxring/model.hpp"

namespace xxring {
namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(n, n, rng);
  return (a + a.adjoint()) * Complex(0.5);
}

void expect_valid_decomposition(const ComplexMatrix& m, const EigenDecomposition& eig) {
  const std::size_t n = m.rows();
  ASSERT_EQ(eig.values.size(), n);
  for (std::size_t i = 1; i < n; ++i) EXPECT_LE(eig.values[i - 1], eig.values[i]);
  EXPECT_LT(max_abs_diff(eig.vectors.adjoint() * eig.vectors, ComplexMatrix::identity(n)), 1e-10);
  const ComplexMatrix rebuilt = eig.vectors * ComplexMatrix::diagonal(eig.values) * eig.vectors.adjoint();
  EXPECT_LT(max_abs_diff(rebuilt, m), 1e-10);
  double sum = 0.0;
  for (double v : eig.values) sum += v;
  EXPECT_NEAR(sum, m.trace().real(), 1e-10);
}

TEST(HermitianEigen, SigmaZ) {
  const auto eig = hermitian_eigen(pauli::z());
  EXPECT_DOUBLE_EQ(eig.values[0], -1.0);
  EXPECT_DOUBLE_EQ(eig.values[1], 1.0);
}

TEST(HermitianEigen, SigmaXVectors) {
  const auto eig = hermitian_eigen(pauli::x());
  EXPECT_NEAR(eig.values[0], -1.0, 1e-15);
  EXPECT_NEAR(eig.values[1], 1.0, 1e-15);
  // (|0> - |1>)/sqrt 2 and (|0> + |1>)/sqrt 2, up to a global phase.
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(eig.vectors(0, 0) * r - eig.vectors(1, 0) * r), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(eig.vectors(0, 1) * r + eig.vectors(1, 1) * r), 1.0, 1e-14);
}

TEST(HermitianEigen, ImpurityRingAtUnitField) {
  // Closed-form values at J = 1, B = 1 with B- = 3, B+ = sqrt(17):
  // {-1, 2, -2, 0, (1+sqrt17)/2, -1, (1-sqrt17)/2, 1}; numpy eigvalsh agrees.
  const double s17 = std::sqrt(17.0);
  const double expected[] = {-2.0, (1.0 - s17) / 2.0, -1.0, -1.0, 0.0, 1.0, 2.0, (1.0 + s17) / 2.0};
  const auto eig = hermitian_eigen(impurity_hamiltonian({1.0, 1.0, 3}));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(eig.values[i], expected[i], 1e-12) << i;
}

TEST(HermitianEigen, RejectsNonHermitian) {
  ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  try {
    hermitian_eigen(m);
    FAIL() << "expected NonHermitianInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonHermitianInput);
  }
}

TEST(HermitianEigen, RejectsOversizedInput) {
  try {
    hermitian_eigen(ComplexMatrix(1025, 1025));
    FAIL() << "expected UnsupportedSize";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedSize);
  }
}

TEST(HermitianEigen, TiesKeepOriginalOrder) {
  const double d[] = {3.0, 1.0, 3.0, 1.0};
  const auto eig = hermitian_eigen(ComplexMatrix::diagonal(d));
  // Ascending, equal values ordered by original column: 1 (col 1), 1 (col 3), 3 (col 0), 3 (col 2).
  EXPECT_EQ(eig.vectors(1, 0), Complex(1.0));
  EXPECT_EQ(eig.vectors(3, 1), Complex(1.0));
  EXPECT_EQ(eig.vectors(0, 2), Complex(1.0));
  EXPECT_EQ(eig.vectors(2, 3), Complex(1.0));
}

TEST(HermitianEigen, Deterministic) {
  std::mt19937_64 rng(7);
  const ComplexMatrix m = random_hermitian(12, rng);
  const auto a = hermitian_eigen(m);
  const auto b = hermitian_eigen(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(max_abs_diff(a.vectors, b.vectors), 0.0);
}

TEST(HermitianEigenProperty, RandomHermitianUpToSixteen) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 16;
    const ComplexMatrix m = random_hermitian(n, rng);
    SCOPED_TRACE("trial " + std::to_string(trial) + " n=" + std::to_string(n));
    expect_valid_decomposition(m, hermitian_eigen(m));
  }
}

TEST(HermitianEigenProperty, DegenerateSpectra) {
  // U diag(...) U^dagger with repeated eigenvalues.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = hermitian_eigen(random_hermitian(8, rng)).vectors;
    const double d[] = {-1.0, -1.0, -1.0, 0.0, 0.0, 2.0, 2.0, 2.0};
    const ComplexMatrix m = u * ComplexMatrix::diagonal(d) * u.adjoint();
    const auto eig = hermitian_eigen(m);
    expect_valid_decomposition(m, eig);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(eig.values[i], d[i], 1e-12);
  }
}

TEST(PsdSqrt, Identity) { EXPECT_LT(max_abs_diff(psd_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)), 1e-15); }

TEST(PsdSqrt, DiagonalRoots) {
  const double d[] = {4.0, 9.0};
  const double r[] = {2.0, 3.0};
  EXPECT_LT(max_abs_diff(psd_sqrt(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(r)), 1e-15);
}

TEST(PsdSqrt, ProjectorIsFixedPoint) {
  const std::vector<Complex> ket{Complex(0.6, 0.0), Complex(0.0, 0.8)};
  const ComplexMatrix p = outer(ket);
  EXPECT_LT(max_abs_diff(psd_sqrt(p), p), 1e-12);
}

TEST(PsdSqrt, ClampsRoundOffNegatives) {
  const double d[] = {-1e-13, 1.0};
  EXPECT_NO_THROW(psd_sqrt(ComplexMatrix::diagonal(d)));
}

TEST(PsdSqrt, RejectsIndefinite) {
  const double d[] = {-1e-6, 1.0};
  try {
    psd_sqrt(ComplexMatrix::diagonal(d));
    FAIL() << "expected NotPositiveSemidefinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveSemidefinite);
  }
}

TEST(PsdSqrtProperty, SquareReproducesRandomGram) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const std::size_t rank = 1 + trial % n;  // include rank-deficient inputs
    const ComplexMatrix a = random_matrix(rank, n, rng);
    const ComplexMatrix m = a.adjoint() * a;
    const ComplexMatrix s = psd_sqrt(m);
    EXPECT_TRUE(is_hermitian(s, 1e-12));
    EXPECT_LT(max_abs_diff(s * s, m), 1e-9) << "trial " << trial;
  }
}

TEST(SingularValues, MatchSquareRootsOfGramSpectrum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_matrix(4, 4, rng);
    const auto s = singular_values(a);
    const auto g = hermitian_eigen(a.adjoint() * a).values;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s[i], std::sqrt(std::max(g[3 - i], 0.0)), 1e-10);
  }
}

}  // namespace
}  // namespace xxring
