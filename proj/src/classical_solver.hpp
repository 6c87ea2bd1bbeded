#pragma once

#include "fpe_operator.hpp"
#include "hermite_basis.hpp"
#include "linalg.hpp"

#include <span>
#include <utility>
#include <vector>

namespace fpedss {

/// Amplitudes b_n over the even states. Before normalization this is a unit
/// eigenvector; afterwards sum_n b_n I_n = 1.
struct ZeroMode {
  std::vector<double> amplitudes;
  double eigenvalue = 0.0;
  bool normalized = false;
};

/// Eigenvector of the smallest eigenvalue of a symmetric H. Throws
/// NumericalError when lambda_1 - lambda_0 < 1e-12 ||H|| (ambiguous zero-mode).
ZeroMode solve_zero_mode(const RealMatrix &h);
ZeroMode solve_zero_mode(const FpeHamiltonian &h);

/// Fixes the ray: flips the sign so that sum b_n I_n > 0 and rescales to 1.
/// Rejects a vanishing L1 functional.
ZeroMode normalize_zero_mode(ZeroMode raw, const BasisIntegrals &integrals);

struct PdfReconstruction {
  std::vector<double> x;
  std::vector<double> density;
  std::vector<bool> negative;                            // density < 0 at x_i
  std::vector<std::pair<double, double>> negative_regions; // [first x, last x] of each run
};

PdfReconstruction reconstruct_pdf(const ZeroMode &mode, const BasisSpec &basis,
                                  std::span<const double> grid);

/// <x^2> = sum_n b_n J_n for a normalized mode.
double moment_from_amplitudes(const ZeroMode &mode, const BasisIntegrals &integrals);

std::vector<double> uniform_grid(double lo, double hi, int points);

/// Convenience bundle: L, H, normalized zero-mode and the basis integrals.
struct ClassicalSolution {
  FpeMatrix fpe;
  FpeHamiltonian hamiltonian;
  ZeroMode mode;
  BasisIntegrals integrals;
  double second_moment = 0.0;
};

ClassicalSolution solve_classical(const ModelParams &params, const BasisSpec &basis);

} // namespace fpedss
