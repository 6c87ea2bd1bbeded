#include "exact_solution.hpp"

#include "errors.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fpedss {

namespace {

// The potential must have risen by this much above its minimum at |x| = R so
// the truncated tails are far below double precision relative to the mass.
constexpr double kTailExponent = 50.0;

} // namespace

ExactPdf::ExactPdf(const ModelParams &params) : params_(params) {
  params_.validate();
  const double a = params_.drift_linear, b = params_.drift_cubic, g = params_.diffusivity;
  if (b == 0.0 && !(a > 0.0))
    throw std::invalid_argument("exact pdf: b = 0 requires a > 0 (otherwise not normalizable)");

  shift_ = 0.0;
  if (a < 0.0 && b > 0.0)
    shift_ = potential(std::sqrt(-a / b));

  domain_ = 6.0 * std::max(1.0, std::pow(g / std::max({b, a, 1.0}), 0.25));
  while (potential(domain_) - shift_ < kTailExponent)
    domain_ *= 1.25;

  auto f = [this](double x) { return std::exp(-(potential(x) - shift_)); };
  // Even integrand: integrate [0, R] and double.
  const QuadratureResult q = integrate_adaptive(f, 0.0, domain_, tolerance_);
  const double z = 2.0 * q.value;
  if (!(z > 0.0) || !std::isfinite(z) || q.error_estimate > 1e-10 * q.value)
    throw NumericalError("exact pdf: normalization quadrature failed");
  log_norm_ = -std::log(z);
}

double ExactPdf::potential(double x) const noexcept {
  const double x2 = x * x;
  return (0.5 * params_.drift_linear * x2 + 0.25 * params_.drift_cubic * x2 * x2) /
         params_.diffusivity;
}

double ExactPdf::operator()(double x) const {
  return std::exp(-(potential(x) - shift_) + log_norm_);
}

double ExactPdf::norm_constant() const { return std::exp(shift_ + log_norm_); }

ExactPdf make_exact_pdf(const ModelParams &params) { return ExactPdf(params); }

double exact_moment(const ExactPdf &pdf, int k) {
  if (k < 0 || k > 8)
    throw std::invalid_argument("exact_moment: order must be in [0, 8], got " + std::to_string(k));
  if (k % 2 != 0)
    return 0.0;
  auto f = [&](double x) { return std::pow(x, k) * pdf(x); };
  const QuadratureResult q = integrate_adaptive(f, 0.0, pdf.quad_domain(), pdf.quad_tolerance());
  if (q.error_estimate > 1e-10 * std::abs(q.value))
    throw NumericalError("exact_moment: quadrature tolerance not met");
  return 2.0 * q.value;
}

} // namespace fpedss
