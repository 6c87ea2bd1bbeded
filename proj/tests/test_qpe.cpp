#include "classical_solver.hpp"
#include "errors.hpp"
#include "qpe.hpp"
#include "reference_values.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fpedss;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix phase_diag(double phi) { return ComplexMatrix{{1, 0}, {0, std::polar(1.0, phi)}}; }

QpeConfig exact_config(int t, std::vector<Complex> init) {
  QpeConfig c;
  c.num_precision_qubits = t;
  c.shots = 0;
  c.init_query_state = std::move(init);
  return c;
}

} // namespace

TEST(Qpe, QftMatchesDefinition) {
  const int q = 3;
  for (std::size_t j = 0; j < 8; ++j) {
    const Statevector out = apply_circuit(Statevector::basis_state(q, j), qft_circuit(q));
    for (std::size_t k = 0; k < 8; ++k) {
      const Complex expected = std::polar(1.0 / std::sqrt(8.0), 2 * kPi * double(j * k) / 8.0);
      EXPECT_NEAR(std::abs(out[k] - expected), 0.0, 1e-14);
    }
  }
}

TEST(Qpe, ExactlyRepresentablePhaseEighth) {
  // e^{i pi / 4} = e^{2 pi i / 8}: phase 1/8 reads out as 001.
  const QpeResult r = run_qpe(phase_diag(kPi / 4), exact_config(3, {0, 1}), 2);
  ASSERT_EQ(r.phase_distribution.size(), 8u);
  EXPECT_NEAR(r.phase_distribution.at("001"), 1.0, 1e-12);
}

TEST(Qpe, ExactlyRepresentablePhaseQuarter) {
  const QpeResult r = run_qpe(phase_diag(kPi / 2), exact_config(3, {0, 1}), 2);
  EXPECT_NEAR(r.phase_distribution.at("010"), 1.0, 1e-12);
}

TEST(Qpe, ZeroPhaseAndSuperposition) {
  const QpeResult zero = run_qpe(phase_diag(kPi / 4), exact_config(3, {1, 0}), 2);
  EXPECT_NEAR(zero.phase_distribution.at("000"), 1.0, 1e-12);

  const double h = 1 / std::sqrt(2.0);
  const QpeResult sup = run_qpe(phase_diag(kPi / 4), exact_config(3, {h, h}), 2);
  EXPECT_NEAR(sup.phase_distribution.at("000"), 0.5, 1e-12);
  EXPECT_NEAR(sup.phase_distribution.at("001"), 0.5, 1e-12);
  double total = 0.0;
  for (const auto &[bits, p] : sup.phase_distribution)
    total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(sup.abs_amplitudes[0], 1.0, 1e-12);
  EXPECT_NEAR(sup.abs_amplitudes[1], 0.0, 1e-6);
}

TEST(Qpe, SampledCountsSumToShots) {
  QpeConfig c = exact_config(3, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
  c.shots = 4096;
  c.seed = 3;
  const QpeResult r = run_qpe(phase_diag(kPi / 4), c, 2);
  long total = 0;
  for (const auto &[bits, n] : r.phase_histogram)
    total += n;
  EXPECT_EQ(total, 4096);
  const double f = static_cast<double>(r.phase_histogram.at("000")) / 4096;
  EXPECT_NEAR(f, 0.5, 3 * std::sqrt(0.25 / 4096));
  EXPECT_EQ(r.zero_bin_shots, r.phase_histogram.at("000"));
}

TEST(Qpe, GaussianCaseRecoversBasisState) {
  const ClassicalSolution s = solve_classical(ModelParams{1, 0, 1}, BasisSpec{4, 1.0, 4});
  QpeConfig c;
  c.seed = 1;
  const QpeResult r = qpe_zero_mode(pad_hamiltonian(s.hamiltonian.entries), c);
  ASSERT_EQ(r.abs_amplitudes.size(), 4u);
  EXPECT_NEAR(r.abs_amplitudes[0], 1.0, 0.02);
  for (int k = 1; k < 4; ++k)
    EXPECT_LT(r.abs_amplitudes[k], 0.1);
}

TEST(Qpe, DoubleWellConfigurationMatchesClassicalMagnitudes) {
  const ClassicalSolution s = solve_classical(ModelParams{-1, 2, 1}, BasisSpec{8, 0.5, 4});
  QpeConfig c; // 7 precision qubits, 8192 shots
  const QpeResult r = qpe_zero_mode(pad_hamiltonian(s.hamiltonian.entries), c,
                                    std::span<const double>(s.mode.amplitudes));
  EXPECT_EQ(r.num_precision_qubits, 7);
  EXPECT_EQ(r.num_query_qubits, 3);
  for (int k = 0; k < 8; ++k) {
    EXPECT_NEAR(r.abs_amplitudes[k], std::abs(ref::kUnitModeN8[k]), 0.05) << k;
    EXPECT_GE(r.abs_amplitudes[k], 0.0);
    EXPECT_EQ(std::signbit(r.signed_amplitudes[k]), std::signbit(ref::kUnitModeN8[k]));
  }
  double total = 0.0;
  for (double p : r.query_distribution)
    total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Qpe, ExactAndSampledModesAgree) {
  const ClassicalSolution s = solve_classical(ModelParams{-1, 2, 1}, BasisSpec{8, 0.5, 4});
  const PaddedHamiltonian h = pad_hamiltonian(s.hamiltonian.entries);
  QpeConfig exact;
  exact.shots = 0;
  QpeConfig sampled;
  sampled.shots = 8192;
  sampled.seed = 9;
  const QpeResult a = qpe_zero_mode(h, exact);
  const QpeResult b = qpe_zero_mode(h, sampled);
  EXPECT_NEAR(b.zero_bin_fraction, a.zero_bin_fraction,
              3 * std::sqrt(a.zero_bin_fraction * (1 - a.zero_bin_fraction) / 8192));
  for (int k = 0; k < 8; ++k) {
    const double p = a.query_distribution[k];
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(b.zero_bin_shots));
    EXPECT_NEAR(b.query_distribution[k], p, 3 * sigma + 1e-12) << k;
  }
}

TEST(Qpe, UnresolvedZeroModeIsReported) {
  // Phase-zero eigenvector sits on the penalty level; the uniform start has
  // no overlap with the zero bin.
  PaddedHamiltonian h;
  h.matrix = RealMatrix{{kPi, 0}, {0, kPi}};
  h.num_qubits = 1;
  h.original_dimension = 1;
  QpeConfig c;
  c.num_precision_qubits = 3;
  c.shots = 0;
  EXPECT_THROW(qpe_zero_mode(h, c), NumericalError);
  const QpeResult r = run_qpe(phase_diag(kPi / 4), exact_config(3, {0, 1}), 2);
  EXPECT_LT(r.zero_bin_fraction, 1e-20);
}
