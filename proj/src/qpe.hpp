#pragma once

#include "quantum_core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpedss {

struct QpeConfig {
  int num_precision_qubits = 7;
  long shots = 8192; // 0 = exact probabilities from the final statevector
  /// U = exp(i tau H). The default tau = 1 matches U = exp(iH); eigenphases
  /// may wrap, which is harmless because only the phase-zero bin is read.
  double time_scale = 1.0;
  /// Initial query register state; empty means the uniform superposition.
  std::vector<Complex> init_query_state;
  std::uint64_t seed = 0;
};

struct QpeResult {
  int num_precision_qubits = 0;
  int num_query_qubits = 0;
  bool sampled = false;
  /// Marginal distribution of the precision register (exact, always filled).
  std::map<std::string, double> phase_distribution;
  /// Sampled counts of the precision register (sampled mode only).
  Counts phase_histogram;
  /// Query-register distribution conditioned on the all-zero precision outcome.
  std::vector<double> query_distribution;
  double zero_bin_fraction = 0.0;
  long zero_bin_shots = 0;
  /// sqrt of the conditional probabilities over the first N (unpadded) states.
  std::vector<double> abs_amplitudes;
  /// |b_n| with signs copied from a supplied reference; empty when no
  /// reference was given.
  std::vector<double> signed_amplitudes;
};

/// Textbook QFT on `num_qubits` qubits (qubit 0 least significant):
/// |j> -> 2^{-q/2} sum_k exp(2 pi i j k / 2^q) |k>.
Circuit qft_circuit(int num_qubits);

/// Precision qubits 0..t-1, query qubits t..t+n-1. Hadamards on the precision
/// register, controlled U^{2^k} (dense payloads from repeated squaring)
/// controlled by precision qubit k, then the inverse QFT on the precision
/// register. A state with U|u> = exp(2 pi i phi)|u> reads out as round(phi 2^t).
Circuit build_qpe_circuit(const ComplexMatrix &u, int num_precision_qubits);

/// |query> ⊗ |0...0>_precision in the layout used by build_qpe_circuit.
Statevector qpe_initial_state(std::span<const Complex> query_state, int num_precision_qubits);

/// Runs phase estimation of `u` and conditions on the all-zero precision bin.
/// `reported_states` limits abs_amplitudes to the first entries. An empty
/// zero bin leaves the conditional distribution at zero.
QpeResult run_qpe(const ComplexMatrix &u, const QpeConfig &config, int reported_states);

/// Zero-mode magnitudes |b_n| of a padded Hamiltonian. When `sign_reference`
/// is given, signed_amplitudes copies its signs (opt-in sign correction).
/// Throws NumericalError if the zero bin holds < 1% of the probability/shots.
QpeResult qpe_zero_mode(const PaddedHamiltonian &h, const QpeConfig &config,
                        std::optional<std::span<const double>> sign_reference = std::nullopt);

} // namespace fpedss
