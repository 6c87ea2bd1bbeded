#include "hermite_basis.hpp"
#include "quadrature.hpp"
#include "reference_values.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fpedss;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// 50-digit evaluation of the orthonormal oscillator function.
double phi_oracle(int n, double ell_d, double x_d) {
  const Big ell = ell_d, y = Big(x_d) / ell;
  const Big h = boost::math::hermite(static_cast<unsigned>(n), y);
  const Big norm = 1 / (pow(boost::math::constants::pi<Big>(), Big(0.25)) *
                        sqrt(pow(Big(2), n) * boost::math::factorial<Big>(n) * ell));
  return static_cast<double>(norm * h * exp(-y * y / 2));
}

} // namespace

TEST(HermiteBasis, LadderMatricesForSmallDimension) {
  const OperatorMatrices ops = build_operator_matrices(BasisSpec{1, 1.0, 4});
  ASSERT_EQ(ops.dimension, 6);
  for (int n = 1; n < 6; ++n)
    EXPECT_DOUBLE_EQ(ops.lower(n - 1, n), std::sqrt(n));
  EXPECT_EQ(ops.raise, ops.lower.transpose());
  EXPECT_DOUBLE_EQ(ops.position(0, 1), 1.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(ops.derivative(0, 1), 1.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(ops.derivative(1, 0), -1.0 / std::sqrt(2.0));
}

TEST(HermiteBasis, CommutatorIsIdentityAwayFromTruncationEdge) {
  const OperatorMatrices ops = build_operator_matrices(BasisSpec{4, 0.7, 4});
  const RealMatrix c = ops.derivative * ops.position - ops.position * ops.derivative;
  for (int i = 0; i < ops.dimension - 1; ++i)
    for (int j = 0; j < ops.dimension - 1; ++j)
      EXPECT_NEAR(c(i, j), i == j ? 1.0 : 0.0, 1e-14);
}

TEST(HermiteBasis, HermitePolynomialsLowOrder) {
  EXPECT_DOUBLE_EQ(hermite_polynomial(0, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(hermite_polynomial(1, 0.3), 0.6);
  EXPECT_DOUBLE_EQ(hermite_polynomial(2, 0.5), -1.0);
  EXPECT_DOUBLE_EQ(hermite_polynomial(3, 1.0), -4.0);
}

TEST(HermiteBasis, EvalBasisAgainstHighPrecisionOracles) {
  EXPECT_NEAR(eval_basis(12, 0.5, 0.7), ref::kPhi12Ell05X07, 1e-13);
  EXPECT_NEAR(oscillator_function(40, 1.0, 3.3), ref::kPhi40Ell1X33, 1e-13);
  for (int n : {0, 2, 6, 18, 30})
    for (double x : {-2.0, -0.3, 0.0, 0.9, 2.7})
      EXPECT_NEAR(eval_basis(n, 0.5, x), phi_oracle(n, 0.5, x), 1e-13) << n << " " << x;
}

TEST(HermiteBasis, EvalBasisRejectsOddOrNegative) {
  EXPECT_THROW(eval_basis(3, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(eval_basis(-2, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(eval_basis(2, 0.0, 0.0), std::invalid_argument);
}

TEST(HermiteBasis, OrthonormalityByQuadrature) {
  const double ell = 0.5;
  for (int m = 0; m <= 8; m += 2)
    for (int n = 0; n <= 8; n += 2) {
      const auto r = integrate_adaptive(
          [&](double x) { return eval_basis(m, ell, x) * eval_basis(n, ell, x); }, -12 * ell,
          12 * ell, 1e-14);
      EXPECT_NEAR(r.value, m == n ? 1.0 : 0.0, 1e-12);
    }
}

TEST(HermiteBasis, ClosedFormIntegralsMatchQuadrature) {
  for (double ell : {0.5, 1.0, 1.7})
    for (int n = 0; n <= 16; n += 2) {
      const auto i = integrate_adaptive([&](double x) { return eval_basis(n, ell, x); },
                                        -15 * ell, 15 * ell, 1e-14);
      const auto j = integrate_adaptive(
          [&](double x) { return x * x * eval_basis(n, ell, x); }, -15 * ell, 15 * ell, 1e-14);
      EXPECT_NEAR(norm_integral(n, ell), i.value, 1e-12) << n;
      EXPECT_NEAR(second_moment_integral(n, ell), j.value, 1e-11) << n;
    }
  EXPECT_DOUBLE_EQ(norm_integral(0, 1.0), std::sqrt(2.0) * std::pow(std::numbers::pi, 0.25));
  EXPECT_EQ(norm_integral(3, 1.0), 0.0);
  EXPECT_EQ(second_moment_integral(5, 1.0), 0.0);
}

TEST(HermiteBasis, BasisIntegralsIndexedByEvenState) {
  const BasisIntegrals bi = basis_integrals(BasisSpec{5, 0.5, 4});
  ASSERT_EQ(bi.norm_integrals.size(), 5u);
  for (int k = 0; k < 5; ++k) {
    EXPECT_DOUBLE_EQ(bi.norm_integrals[k], norm_integral(2 * k, 0.5));
    EXPECT_DOUBLE_EQ(bi.second_moment_integrals[k], second_moment_integral(2 * k, 0.5));
  }
}

TEST(HermiteBasis, SpecValidation) {
  EXPECT_THROW((BasisSpec{0, 1.0, 4}.validate()), std::invalid_argument);
  EXPECT_THROW((BasisSpec{2, -1.0, 4}.validate()), std::invalid_argument);
  EXPECT_EQ((BasisSpec{3, 1.0, 4}.dimension()), 10);
}
