#include "hermite_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpedss {

void BasisSpec::validate() const {
  if (num_even_states < 1)
    throw std::invalid_argument("basis: N must be >= 1, got " + std::to_string(num_even_states));
  if (!(length_scale > 0.0) || !std::isfinite(length_scale))
    throw std::invalid_argument("basis: length scale must be positive and finite");
  if (headroom < 0)
    throw std::invalid_argument("basis: headroom must be non-negative");
}

OperatorMatrices build_operator_matrices(const BasisSpec &spec) {
  spec.validate();
  const auto m = static_cast<std::size_t>(spec.dimension());
  const double ell = spec.length_scale;

  OperatorMatrices ops;
  ops.dimension = spec.dimension();
  ops.lower = RealMatrix(m, m);
  for (std::size_t n = 1; n < m; ++n)
    ops.lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  ops.raise = ops.lower.transpose();

  const double xs = ell / std::numbers::sqrt2;
  const double ds = 1.0 / (std::numbers::sqrt2 * ell);
  ops.position = xs * (ops.lower + ops.raise);
  ops.derivative = ds * (ops.lower - ops.raise);
  return ops;
}

double hermite_polynomial(int n, double y) {
  if (n < 0)
    throw std::invalid_argument("hermite_polynomial: negative order");
  double h0 = 1.0;
  if (n == 0)
    return h0;
  double h1 = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * y * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double oscillator_function(int n, double ell, double x) {
  if (n < 0)
    throw std::invalid_argument("oscillator_function: negative index");
  if (!(ell > 0.0))
    throw std::invalid_argument("oscillator_function: length scale must be positive");
  const double y = x / ell;
  // psi_k = H_k(y) e^{-y^2/2} / sqrt(2^k k!), recurrence
  // psi_{k+1} = sqrt(2/(k+1)) y psi_k - sqrt(k/(k+1)) psi_{k-1}.
  double p0 = std::exp(-0.5 * y * y) / (std::pow(std::numbers::pi, 0.25) * std::sqrt(ell));
  if (n == 0)
    return p0;
  double p1 = std::numbers::sqrt2 * y * p0;
  for (int k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = std::sqrt(2.0 / (kk + 1.0)) * y * p1 - std::sqrt(kk / (kk + 1.0)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double eval_basis(int n, double ell, double x) {
  if (n < 0 || n % 2 != 0)
    throw std::invalid_argument("eval_basis: n must be a non-negative even integer, got " +
                                std::to_string(n));
  return oscillator_function(n, ell, x);
}

double norm_integral(int n, double ell) {
  if (n < 0)
    throw std::invalid_argument("norm_integral: negative index");
  if (!(ell > 0.0))
    throw std::invalid_argument("norm_integral: length scale must be positive");
  if (n % 2 != 0)
    return 0.0;
  double i = std::sqrt(2.0 * ell) * std::pow(std::numbers::pi, 0.25);
  for (int k = 0; k < n; k += 2)
    i *= std::sqrt((k + 1.0) / (k + 2.0));
  return i;
}

double second_moment_integral(int n, double ell) {
  if (n < 0)
    throw std::invalid_argument("second_moment_integral: negative index");
  if (n % 2 != 0)
    return 0.0;
  // x^2 phi_n = (ell^2/2) [ sqrt((n+1)(n+2)) phi_{n+2} + (2n+1) phi_n + sqrt(n(n-1)) phi_{n-2} ]
  const double nn = static_cast<double>(n);
  double s = std::sqrt((nn + 1.0) * (nn + 2.0)) * norm_integral(n + 2, ell) +
             (2.0 * nn + 1.0) * norm_integral(n, ell);
  if (n >= 2)
    s += std::sqrt(nn * (nn - 1.0)) * norm_integral(n - 2, ell);
  return 0.5 * ell * ell * s;
}

BasisIntegrals basis_integrals(const BasisSpec &spec) {
  spec.validate();
  BasisIntegrals out;
  out.norm_integrals.reserve(spec.num_even_states);
  out.second_moment_integrals.reserve(spec.num_even_states);
  for (int k = 0; k < spec.num_even_states; ++k) {
    out.norm_integrals.push_back(norm_integral(2 * k, spec.length_scale));
    out.second_moment_integrals.push_back(second_moment_integral(2 * k, spec.length_scale));
  }
  return out;
}

} // namespace fpedss
