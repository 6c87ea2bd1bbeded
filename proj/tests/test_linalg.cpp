#include "errors.hpp"
#include "linalg.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <random>

using namespace fpedss;

namespace {

RealMatrix random_symmetric(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m(i, j) = m(j, i) = u(rng);
  return m;
}

} // namespace

TEST(Linalg, MultiplyAndTranspose) {
  const RealMatrix a{{1, 2, 3}, {4, 5, 6}};
  const RealMatrix b{{1, 0}, {0, 1}, {1, 1}};
  const RealMatrix c = a * b;
  EXPECT_EQ(c, (RealMatrix{{4, 5}, {10, 11}}));
  EXPECT_EQ(a.transpose().transpose(), a);
  EXPECT_EQ(a.block(0, 1, 2, 2), (RealMatrix{{2, 3}, {5, 6}}));
}

TEST(Linalg, JacobiMatchesEigenOracle) {
  for (std::size_t n : {1u, 2u, 5u, 12u, 20u}) {
    const RealMatrix m = random_symmetric(n, static_cast<unsigned>(n));
    const EigenDecomposition d = symmetric_eigen(m);

    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        e(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(e);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(d.values[i], oracle.eigenvalues()(i), 1e-12) << "n=" << n << " i=" << i;

    // Residual and orthonormality.
    for (std::size_t k = 0; k < n; ++k) {
      const std::vector<double> v = d.vector(k);
      const std::vector<double> mv = multiply(m, v);
      for (std::size_t i = 0; i < n; ++i)
        EXPECT_NEAR(mv[i], d.values[k] * v[i], 1e-12);
    }
    const RealMatrix gram = d.vectors.transpose() * d.vectors;
    EXPECT_LT(max_abs_difference(gram, RealMatrix::identity(n)), 1e-13);
  }
}

TEST(Linalg, JacobiAscendingOrderAndDiagonalInput) {
  const RealMatrix m{{3, 0, 0}, {0, -1, 0}, {0, 0, 2}};
  const EigenDecomposition d = symmetric_eigen(m);
  EXPECT_EQ(d.values, (std::vector<double>{-1, 2, 3}));
}

TEST(Linalg, RejectsNonSymmetric) {
  const RealMatrix m{{1, 2}, {0, 1}};
  EXPECT_THROW(symmetric_eigen(m), std::invalid_argument);
  EXPECT_THROW(symmetric_eigen(RealMatrix(2, 3)), std::invalid_argument);
}

TEST(Linalg, AdjointAndNorms) {
  const ComplexMatrix m{{Complex(1, 1), Complex(0, 2)}, {Complex(3, 0), Complex(0, -1)}};
  const ComplexMatrix h = adjoint(m);
  EXPECT_EQ(h(0, 1), Complex(3, 0));
  EXPECT_EQ(h(1, 0), Complex(0, -2));
  EXPECT_DOUBLE_EQ(frobenius_norm(RealMatrix{{3, 4}}), 5.0);
  EXPECT_DOUBLE_EQ(symmetry_defect(RealMatrix{{1, 2}, {2.5, 1}}), 0.5);
}
