#include "fpe_operator.hpp"

#include "errors.hpp"
#include "format.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace fpedss {

void ModelParams::validate() const {
  if (!std::isfinite(drift_linear) || !std::isfinite(drift_cubic) || !std::isfinite(diffusivity))
    throw std::invalid_argument("model: parameters must be finite");
  if (drift_cubic < 0.0)
    throw std::invalid_argument("model: b must be >= 0 for stability");
  if (!(diffusivity > 0.0))
    throw std::invalid_argument("model: gamma must be > 0");
}

RealMatrix assemble_full_operator(const ModelParams &params, const OperatorMatrices &ops) {
  params.validate();
  const RealMatrix &x = ops.position;
  const RealMatrix &d = ops.derivative;
  const RealMatrix dx = d * x;
  RealMatrix l = (-params.drift_linear) * dx;
  if (params.drift_cubic != 0.0)
    l -= params.drift_cubic * (dx * x * x);
  l -= params.diffusivity * (d * d);
  return l;
}

FpeMatrix build_fpe_matrix(const ModelParams &params, const BasisSpec &basis) {
  params.validate();
  basis.validate();
  if (basis.headroom < 4)
    throw std::invalid_argument("build_fpe_matrix: headroom must be >= 4");
  const RealMatrix full = assemble_full_operator(params, build_operator_matrices(basis));
  const auto n = static_cast<std::size_t>(basis.num_even_states);
  FpeMatrix out{RealMatrix(n, n), params, basis};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.entries(i, j) = full(2 * i, 2 * j);
  return out;
}

RealMatrix gram_matrix(const RealMatrix &l) {
  const std::size_t rows = l.rows(), n = l.cols();
  RealMatrix h(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m; k < n; ++k) {
      double s = 0.0;
      for (std::size_t p = 0; p < rows; ++p)
        s += l(p, m) * l(p, k);
      h(m, k) = h(k, m) = s;
    }
  return h;
}

FpeHamiltonian build_hamiltonian(const FpeMatrix &l) { return {gram_matrix(l.entries), l}; }

namespace {

// phi_n(x) = c_n H_n(y) e^{-y^2/2}, y = x / ell, together with its first two
// x-derivatives obtained from H_n' = 2n H_{n-1}.
struct HermiteFunctionJet {
  double value, first, second;
};

double hermite_prefactor(int n, double ell) {
  const double log_c = -0.25 * std::log(std::numbers::pi) -
                       0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) + std::log(ell));
  return std::exp(log_c);
}

HermiteFunctionJet hermite_jet(int n, double ell, double x) {
  const double y = x / ell;
  const double g = std::exp(-0.5 * y * y);
  const double hn = hermite_polynomial(n, y);
  const double hn1 = n >= 1 ? hermite_polynomial(n - 1, y) : 0.0;
  const double hn2 = n >= 2 ? hermite_polynomial(n - 2, y) : 0.0;
  const double c = hermite_prefactor(n, ell);
  const double f = hn;
  const double fp = 2.0 * n * hn1 - y * hn;
  const double fpp = 4.0 * n * (n - 1.0) * hn2 - 4.0 * n * y * hn1 + (y * y - 1.0) * hn;
  return {c * f * g, c * fp * g / ell, c * fpp * g / (ell * ell)};
}

} // namespace

double quadrature_matrix_element(int m, int n, const ModelParams &params, double ell) {
  params.validate();
  if (m < 0 || n < 0 || m % 2 || n % 2)
    throw std::invalid_argument("quadrature_matrix_element: indices must be even and >= 0");
  if (!(ell > 0.0))
    throw std::invalid_argument("quadrature_matrix_element: length scale must be positive");

  auto integrand = [&](double x) {
    const HermiteFunctionJet left = hermite_jet(m, ell, x);
    const HermiteFunctionJet right = hermite_jet(n, ell, x);
    // d/dx (u phi_n) - Gamma phi_n''
    const double lphi = params.velocity_slope(x) * right.value + params.velocity(x) * right.first -
                        params.diffusivity * right.second;
    return left.value * lphi;
  };

  const int states = std::max(m, n) / 2 + 1;
  double r = 12.0 * ell * std::sqrt(2.0 * states);
  while (std::max(std::abs(integrand(r)), std::abs(integrand(-r))) >= 1e-14) {
    r *= 1.5;
    if (r > 1e4 * ell)
      throw NumericalError("quadrature_matrix_element: integrand tail does not decay");
  }
  const QuadratureResult q = integrate_adaptive(integrand, -r, r, 1e-13, 1e-12);
  if (!(q.error_estimate <= 1e-9) || !std::isfinite(q.value))
    throw NumericalError("quadrature_matrix_element: error estimate " +
                         format_double(q.error_estimate) + " exceeds 1e-9");
  return q.value;
}

void write_matrix_csv(std::ostream &out, const FpeMatrix &l) {
  out << "# L matrix N=" << l.basis.num_even_states << " a=" << format_short(l.params.drift_linear)
      << " b=" << format_short(l.params.drift_cubic) << " gamma=" << format_short(l.params.diffusivity)
      << " ell=" << format_short(l.basis.length_scale) << '\n';
  for (std::size_t i = 0; i < l.entries.rows(); ++i) {
    for (std::size_t j = 0; j < l.entries.cols(); ++j) {
      if (j)
        out << ',';
      out << format_double(l.entries(i, j));
    }
    out << '\n';
  }
}

} // namespace fpedss
