#include "classical_solver.hpp"
#include "errors.hpp"
#include "fpe_operator.hpp"
#include "reference_values.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include <sstream>

using namespace fpedss;

namespace {

const ModelParams kDoubleWell{-1.0, 2.0, 1.0};
const ModelParams kGaussian{1.0, 0.0, 1.0};

} // namespace

TEST(FpeOperator, GaussianGroundStateColumnVanishes) {
  const FpeMatrix l = build_fpe_matrix(kGaussian, BasisSpec{6, 1.0, 4});
  for (int m = 0; m < 6; ++m)
    EXPECT_EQ(l.entries(m, 0), 0.0) << m;
  const FpeHamiltonian h = build_hamiltonian(l);
  for (int m = 0; m < 6; ++m)
    EXPECT_EQ(h.entries(m, 0), 0.0);
}

TEST(FpeOperator, DoubleWellL00ClosedForm) {
  const FpeMatrix l = build_fpe_matrix(kDoubleWell, BasisSpec{4, 0.5, 4});
  const double a = -1, b = 2, g = 1, ell = 0.5;
  const double closed = -a / 2 - 3 * b * ell * ell / 4 + g / (2 * ell * ell);
  EXPECT_NEAR(closed, 2.125, 1e-15);
  EXPECT_NEAR(l.entries(0, 0), closed, 1e-13);
}

TEST(FpeOperator, LadderAgreesWithFrozenQuadratureOracle) {
  const FpeMatrix l = build_fpe_matrix(kDoubleWell, BasisSpec{3, 0.5, 4});
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      EXPECT_NEAR(l.entries(m, n), ref::kLQuadrature[m][n], 1e-12) << m << "," << n;
}

TEST(FpeOperator, QuadratureElementMatchesLadder) {
  EXPECT_NEAR(quadrature_matrix_element(0, 0, kGaussian, 1.0), 0.0, 1e-12);
  EXPECT_NEAR(quadrature_matrix_element(0, 0, kDoubleWell, 0.5), 2.125, 1e-10);
  const FpeMatrix g = build_fpe_matrix(kGaussian, BasisSpec{2, 1.0, 4});
  EXPECT_NEAR(quadrature_matrix_element(0, 2, kGaussian, 1.0), g.entries(0, 1), 1e-9);
}

TEST(FpeOperator, FullSpaceParitySelectionRule) {
  const OperatorMatrices ops = build_operator_matrices(BasisSpec{4, 0.5, 4});
  const RealMatrix full = assemble_full_operator(kDoubleWell, ops);
  for (std::size_t m = 0; m < full.rows(); ++m)
    for (std::size_t n = 0; n < full.cols(); ++n)
      if ((m + n) % 2) {
        EXPECT_EQ(full(m, n), 0.0);
      }
}

TEST(FpeOperator, RejectsInsufficientHeadroom) {
  EXPECT_THROW(build_fpe_matrix(kDoubleWell, BasisSpec{4, 0.5, 3}), std::invalid_argument);
}

TEST(FpeOperator, GramMatrixSmallExample) {
  const RealMatrix l{{0, 1}, {0, 2}};
  EXPECT_EQ(gram_matrix(l), (RealMatrix{{0, 0}, {0, 5}}));
}

TEST(FpeOperator, HamiltonianSymmetricAndPositiveSemidefinite) {
  const FpeHamiltonian h = build_hamiltonian(build_fpe_matrix(kDoubleWell, BasisSpec{8, 0.5, 4}));
  EXPECT_LE(symmetry_defect(h.entries), 1e-14 * max_abs(h.entries));
  const EigenDecomposition d = symmetric_eigen(h.entries);
  EXPECT_GE(d.values.front(), -1e-10);
  EXPECT_LT(d.values.front(), 1e-3);
}

TEST(FpeOperator, ScalingInvariance) {
  const BasisSpec basis{6, 0.5, 4};
  const FpeMatrix base = build_fpe_matrix(kDoubleWell, basis);
  for (double kappa : {0.1, 10.0}) {
    const FpeMatrix scaled = build_fpe_matrix(kDoubleWell.scaled(kappa), basis);
    for (int m = 0; m < 6; ++m)
      for (int n = 0; n < 6; ++n)
        EXPECT_NEAR(scaled.entries(m, n), kappa * base.entries(m, n),
                    1e-13 * std::max(1.0, kappa * std::abs(base.entries(m, n))));
  }
}

TEST(FpeOperator, ModelParamsValidation) {
  EXPECT_THROW((ModelParams{1.0, -1.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((ModelParams{1.0, 0.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ModelParams{-1.0, 2.0, 1.0}.validate()));
}

TEST(FpeOperator, MatrixCsvFormat) {
  std::ostringstream out;
  write_matrix_csv(out, build_fpe_matrix(kDoubleWell, BasisSpec{2, 0.5, 4}));
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "# L matrix N=2 a=-1 b=2 gamma=1 ell=0.5");
  const std::size_t row = s.find('\n') + 1;
  EXPECT_NEAR(std::stod(s.substr(row, s.find(',', row) - row)), 2.125, 1e-14);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
}
