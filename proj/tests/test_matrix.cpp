#include <gtest/gtest.h>

#include "xxring/matrix.hpp"

namespace xxring {
namespace {

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(pauli::identity(), pauli::identity()), ComplexMatrix::identity(4)), 0.0);
}

TEST(Kron, SigmaZTimesIdentityIsDiagonal) {
  const double d[] = {1.0, 1.0, -1.0, -1.0};
  EXPECT_EQ(max_abs_diff(kron(pauli::z(), pauli::identity()), ComplexMatrix::diagonal(d)), 0.0);
}

TEST(Kron, SigmaXTimesSigmaXIsAntiDiagonal) {
  const ComplexMatrix m = kron(pauli::x(), pauli::x());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(m(r, c), Complex(r + c == 3 ? 1.0 : 0.0)) << r << "," << c;
}

TEST(Kron, DimensionsMultiply) {
  const ComplexMatrix a(2, 3);
  const ComplexMatrix b(4, 5);
  const ComplexMatrix k = kron(a, b);
  EXPECT_EQ(k.rows(), 8u);
  EXPECT_EQ(k.cols(), 15u);
}

TEST(Pauli, Algebra) {
  const Complex i(0.0, 1.0);
  EXPECT_LT(max_abs_diff(pauli::x() * pauli::y(), i * pauli::z()), 1e-15);
  EXPECT_LT(max_abs_diff(pauli::y() * pauli::y(), pauli::identity()), 1e-15);
  EXPECT_TRUE(is_hermitian(pauli::y()));
}

TEST(Pauli, OnSiteUsesLeftmostFactorForSiteZero) {
  const ComplexMatrix z0 = pauli::on_site(pauli::z(), 0, 3);
  EXPECT_EQ(z0(0, 0), Complex(1.0));
  EXPECT_EQ(z0(4, 4), Complex(-1.0));  // |100>
  EXPECT_EQ(z0(3, 3), Complex(1.0));   // |011>
}

TEST(ComplexMatrix, RejectsWrongEntryCount) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), Error);
}

TEST(ComplexMatrix, ProductShapeMismatchThrows) {
  EXPECT_THROW(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), Error);
}

TEST(ComplexMatrix, AdjointAndHermitianCheck) {
  ComplexMatrix m{{1.0, Complex(2.0, 3.0)}, {Complex(2.0, -3.0), 4.0}};
  EXPECT_TRUE(is_hermitian(m));
  EXPECT_EQ(max_abs_diff(m.adjoint(), m), 0.0);
  m(0, 1) += 1e-11;
  EXPECT_FALSE(is_hermitian(m));
}

}  // namespace
}  // namespace xxring
