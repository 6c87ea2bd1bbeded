#pragma once

#include "linalg.hpp"

#include <vector>

namespace fpedss {

/// Truncated harmonic-oscillator basis. Only the even states
/// 0, 2, ..., 2N-2 carry the stationary density; `headroom` extra indices
/// are kept while forming operator products so the extracted block is exact.
struct BasisSpec {
  int num_even_states = 1;
  double length_scale = 1.0;
  int headroom = 4;

  /// Size M = 2N + headroom of the full (even + odd) working space.
  int dimension() const noexcept { return 2 * num_even_states + headroom; }
  /// Throws std::invalid_argument for N < 1, ell <= 0 or negative headroom.
  void validate() const;
};

/// Ladder, position and derivative matrices on the M-dimensional space.
struct OperatorMatrices {
  int dimension = 0;
  RealMatrix lower;      // A,  A[n-1, n] = sqrt(n)
  RealMatrix raise;      // A^T
  RealMatrix position;   // (ell / sqrt 2) (A + A^T)
  RealMatrix derivative; // (1 / (sqrt 2 ell)) (A - A^T)
};

OperatorMatrices build_operator_matrices(const BasisSpec &spec);

/// Physicists' Hermite polynomial H_n(y) by the three-term recurrence.
double hermite_polynomial(int n, double y);

/// Orthonormal oscillator function
///   phi_n(x) = H_n(x/ell) exp(-x^2 / 2 ell^2) / (pi^(1/4) sqrt(2^n n! ell))
/// for any n >= 0. Evaluated with the normalized form of the Hermite
/// recurrence so that large n neither overflows nor loses the prefactor.
double oscillator_function(int n, double ell, double x);

/// Same as oscillator_function but restricted to the even states that make
/// up the density expansion; rejects odd or negative n.
double eval_basis(int n, double ell, double x);

/// Closed-form integrals of the basis functions over the real line.
///   I_n = ∫ phi_n dx,   J_n = ∫ x^2 phi_n dx
/// Both vanish for odd n. I_0 = sqrt(2 ell) pi^(1/4) and
/// I_{n+2} = I_n sqrt((n+1)/(n+2)); J_n follows from the exact tridiagonal
/// action of x^2 on phi_n.
double norm_integral(int n, double ell);
double second_moment_integral(int n, double ell);

/// Integrals for the even states of a basis, indexed by k where n = 2k.
struct BasisIntegrals {
  std::vector<double> norm_integrals;
  std::vector<double> second_moment_integrals;
};

BasisIntegrals basis_integrals(const BasisSpec &spec);

} // namespace fpedss
