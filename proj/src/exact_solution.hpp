#pragma once

#include "fpe_operator.hpp"

namespace fpedss {

/// Closed-form stationary density P(x) = N exp(-a x^2 / 2 Gamma - b x^4 / 4 Gamma),
/// normalized in L1 by adaptive quadrature on [-R, R].
class ExactPdf {
public:
  /// Rejects parameter sets that are not normalizable (b = 0 with a <= 0).
  explicit ExactPdf(const ModelParams &params);

  double operator()(double x) const;
  const ModelParams &params() const noexcept { return params_; }
  /// The normalization constant N (value of P at the potential minimum
  /// shifted back to x-space: P(x) = N exp(-V(x))).
  double norm_constant() const;
  double quad_domain() const noexcept { return domain_; }
  double quad_tolerance() const noexcept { return tolerance_; }

  /// Potential V(x) = (a x^2 / 2 + b x^4 / 4) / Gamma.
  double potential(double x) const noexcept;

private:
  ModelParams params_;
  double domain_ = 0.0;
  double tolerance_ = 1e-13;
  double shift_ = 0.0;    // min of V on the real line
  double log_norm_ = 0.0; // log of 1 / ∫ exp(-(V - shift))
};

ExactPdf make_exact_pdf(const ModelParams &params);

/// ∫ x^k P(x) dx for even 0 <= k <= 8 (odd k returns 0 without integration).
double exact_moment(const ExactPdf &pdf, int k);

} // namespace fpedss
