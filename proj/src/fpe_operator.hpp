#pragma once

#include "hermite_basis.hpp"
#include "linalg.hpp"

#include <iosfwd>

namespace fpedss {

/// Drift u(x) = -a x - b x^3 and diffusivity Gamma of the Langevin model.
struct ModelParams {
  double drift_linear = 1.0; // a
  double drift_cubic = 0.0;  // b, must be >= 0
  double diffusivity = 1.0;  // Gamma, must be > 0

  void validate() const;
  double velocity(double x) const noexcept { return -drift_linear * x - drift_cubic * x * x * x; }
  double velocity_slope(double x) const noexcept {
    return -drift_linear - 3.0 * drift_cubic * x * x;
  }
  ModelParams scaled(double kappa) const {
    return {kappa * drift_linear, kappa * drift_cubic, kappa * diffusivity};
  }
};

/// Fokker–Planck operator projected onto the even states {0, 2, ..., 2N-2}.
struct FpeMatrix {
  RealMatrix entries;
  ModelParams params;
  BasisSpec basis;
};

/// Gram form H = L^T L of the projected operator; shares its null vector.
struct FpeHamiltonian {
  RealMatrix entries;
  FpeMatrix source;
};

/// L = -a D X - b D X X X - Gamma D D on the full M-dimensional space.
RealMatrix assemble_full_operator(const ModelParams &params, const OperatorMatrices &ops);

/// Requires headroom >= 4; extracts the even-index N x N block of the full operator.
FpeMatrix build_fpe_matrix(const ModelParams &params, const BasisSpec &basis);

/// H_mn = sum_p L_pm L_pn with p over the same truncated states.
RealMatrix gram_matrix(const RealMatrix &l);
FpeHamiltonian build_hamiltonian(const FpeMatrix &l);

/// Independent quadrature oracle for <phi_m | L_FPE phi_n>, built from
/// analytic derivatives of the Hermite functions rather than the ladder
/// algebra. Throws NumericalError if the error estimate exceeds 1e-9.
double quadrature_matrix_element(int m, int n, const ModelParams &params, double ell);

/// CSV dump, row-major, 17 significant digits, one comment header line.
void write_matrix_csv(std::ostream &out, const FpeMatrix &l);

} // namespace fpedss
