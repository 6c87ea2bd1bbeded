#include "classical_solver.hpp"

#include "errors.hpp"

#include <cmath>
#include <stdexcept>

namespace fpedss {

ZeroMode solve_zero_mode(const RealMatrix &h) {
  if (!h.square() || h.rows() == 0)
    throw std::invalid_argument("solve_zero_mode: H must be square and non-empty");
  const EigenDecomposition eig = symmetric_eigen(h);
  if (eig.values.size() > 1) {
    const double gap = eig.values[1] - eig.values[0];
    if (gap < 1e-12 * frobenius_norm(h))
      throw NumericalError("solve_zero_mode: lowest eigenvalue is degenerate, zero-mode ambiguous");
  }
  return ZeroMode{eig.vector(0), eig.values[0], false};
}

ZeroMode solve_zero_mode(const FpeHamiltonian &h) { return solve_zero_mode(h.entries); }

ZeroMode normalize_zero_mode(ZeroMode raw, const BasisIntegrals &integrals) {
  if (raw.amplitudes.size() > integrals.norm_integrals.size())
    throw std::invalid_argument("normalize_zero_mode: more amplitudes than basis integrals");
  double l1 = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < raw.amplitudes.size(); ++k) {
    l1 += raw.amplitudes[k] * integrals.norm_integrals[k];
    scale += std::abs(raw.amplitudes[k] * integrals.norm_integrals[k]);
  }
  if (!(std::abs(l1) > 1e-14 * scale) || !std::isfinite(l1))
    throw NumericalError("normalize_zero_mode: L1 functional vanishes (spurious mode)");
  for (double &b : raw.amplitudes)
    b /= l1; // sign flip and rescale in one step
  raw.normalized = true;
  return raw;
}

PdfReconstruction reconstruct_pdf(const ZeroMode &mode, const BasisSpec &basis,
                                  std::span<const double> grid) {
  basis.validate();
  if (!mode.normalized)
    throw std::invalid_argument("reconstruct_pdf: mode must be normalized");
  PdfReconstruction out;
  out.x.assign(grid.begin(), grid.end());
  out.density.reserve(grid.size());
  out.negative.reserve(grid.size());
  for (double x : grid) {
    double p = 0.0;
    for (std::size_t k = 0; k < mode.amplitudes.size(); ++k)
      p += mode.amplitudes[k] * eval_basis(static_cast<int>(2 * k), basis.length_scale, x);
    out.density.push_back(p);
    out.negative.push_back(p < 0.0);
  }
  for (std::size_t i = 0; i < grid.size();) {
    if (!out.negative[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid.size() && out.negative[j + 1])
      ++j;
    out.negative_regions.emplace_back(grid[i], grid[j]);
    i = j + 1;
  }
  return out;
}

double moment_from_amplitudes(const ZeroMode &mode, const BasisIntegrals &integrals) {
  if (!mode.normalized)
    throw std::invalid_argument("moment_from_amplitudes: mode must be normalized");
  if (mode.amplitudes.size() > integrals.second_moment_integrals.size())
    throw std::invalid_argument("moment_from_amplitudes: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < mode.amplitudes.size(); ++k)
    s += mode.amplitudes[k] * integrals.second_moment_integrals[k];
  return s;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo))
    throw std::invalid_argument("uniform_grid: need points >= 2 and hi > lo");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = lo + h * i;
  g.back() = hi;
  return g;
}

ClassicalSolution solve_classical(const ModelParams &params, const BasisSpec &basis) {
  ClassicalSolution s{build_fpe_matrix(params, basis), {}, {}, basis_integrals(basis), 0.0};
  s.hamiltonian = build_hamiltonian(s.fpe);
  s.mode = normalize_zero_mode(solve_zero_mode(s.hamiltonian), s.integrals);
  s.second_moment = moment_from_amplitudes(s.mode, s.integrals);
  return s;
}

} // namespace fpedss
