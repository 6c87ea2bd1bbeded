#include "exact_solution.hpp"
#include "quadrature.hpp"
#include "reference_values.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fpedss;

TEST(ExactSolution, StandardNormalCase) {
  const ExactPdf p = make_exact_pdf(ModelParams{1.0, 0.0, 1.0});
  EXPECT_NEAR(p(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-13);
  EXPECT_NEAR(exact_moment(p, 2), 1.0, 1e-12);
  EXPECT_NEAR(exact_moment(p, 4), 3.0, 1e-11);
}

TEST(ExactSolution, DoubleWellCaseAgainstFrozenOracle) {
  const ExactPdf p = make_exact_pdf(ModelParams{-1.0, 2.0, 1.0});
  EXPECT_NEAR(p(0.0), ref::kExactP0, 1e-12);
  EXPECT_NEAR(p.norm_constant(), ref::kExactP0, 1e-12);
  EXPECT_NEAR(exact_moment(p, 2), ref::kExactX2, 1e-11);
  EXPECT_NEAR(exact_moment(p, 4), ref::kExactX4, 1e-11);
  EXPECT_NEAR(exact_moment(make_exact_pdf(ModelParams{1.0, 2.0, 1.0}), 2),
              ref::kExactX2PositiveA, 1e-11);
}

TEST(ExactSolution, SymmetryAndParity) {
  const ExactPdf p = make_exact_pdf(ModelParams{-1.0, 2.0, 1.0});
  for (double x : {0.1, 0.5, 1.0, 1.7, 3.0})
    EXPECT_EQ(p(x), p(-x));
  EXPECT_EQ(exact_moment(p, 1), 0.0);
  EXPECT_EQ(exact_moment(p, 3), 0.0);
}

TEST(ExactSolution, NormalizationAndCauchySchwarz) {
  for (const ModelParams &m : {ModelParams{-1, 2, 1}, ModelParams{1, 2, 1}, ModelParams{0.5, 0.1, 2},
                               ModelParams{-3, 0.5, 0.2}}) {
    const ExactPdf p = make_exact_pdf(m);
    EXPECT_NEAR(exact_moment(p, 0), 1.0, 1e-10);
    const double x2 = exact_moment(p, 2), x4 = exact_moment(p, 4);
    EXPECT_GT(x2, 0.0);
    EXPECT_GE(x4, x2 * x2);
    const double r = p.quad_domain();
    const auto total = integrate_adaptive([&](double x) { return p(x); }, -r, r, 1e-14);
    EXPECT_NEAR(total.value, 1.0, 1e-10);
  }
}

TEST(ExactSolution, RescalingInvariance) {
  const ExactPdf base = make_exact_pdf(ModelParams{-1.0, 2.0, 1.0});
  for (double kappa : {0.1, 10.0}) {
    const ExactPdf scaled = make_exact_pdf(ModelParams{-1.0, 2.0, 1.0}.scaled(kappa));
    for (double x = -2.0; x <= 2.0; x += 0.25)
      EXPECT_NEAR(scaled(x), base(x), 1e-12);
  }
}

TEST(ExactSolution, RejectsNonNormalizable) {
  EXPECT_THROW(make_exact_pdf(ModelParams{0.0, 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(make_exact_pdf(ModelParams{-1.0, 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(exact_moment(make_exact_pdf(ModelParams{1, 0, 1}), 10), std::invalid_argument);
}
