#pragma once

#include "fpe_operator.hpp"
#include "noise_mitigation.hpp"
#include "quantum_core.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fpedss {

enum class Entanglement { linear, full };

/// RealAmplitudes: an RY column, then `reps` x (CX entangler + RY column).
struct AnsatzSpec {
  int num_qubits = 1;
  int reps = 4;
  Entanglement entanglement = Entanglement::linear;

  int num_parameters() const noexcept { return num_qubits * (reps + 1); }
  void validate() const;
};

Circuit build_ansatz(const AnsatzSpec &spec, std::span<const double> theta);

/// Real amplitudes of a state whose global phase is fixed so that the
/// largest-magnitude entry is real and positive.
std::vector<double> real_amplitudes(const Statevector &psi);

/// sum_i c_i <P_i>. shots = 0 is exact; otherwise each non-identity word is
/// estimated from max(1, shots / words) samples in its rotated basis.
double expectation(std::span<const PauliTerm> terms, const Statevector &psi, long shots,
                   std::uint64_t seed);

using CostFunction = std::function<double(std::span<const double>)>;

struct OptimizerResult {
  std::vector<double> theta;
  double cost = 0.0;
  std::vector<double> energy_trace;
  long evaluations = 0;
};

struct SpsaOptions {
  int max_iterations = 150;
  double a = 0.0;           // 0 = calibrate from the first probes
  double c = 0.1;
  double stability = -1.0;  // A; negative = 0.1 x max_iterations
  double alpha = 0.602;
  double gamma = 0.101;
  int calibration_probes = 25;
  double target_first_step = 0.6283185307179586; // 2 pi / 10
  std::uint64_t seed = 0;
};

/// SPSA with gains a_k = a / (A + k + 1)^alpha, c_k = c / (k + 1)^gamma and
/// Bernoulli +-1 perturbations. The trace records (f+ + f-) / 2 per
/// iteration. The returned point is the best of all iterates after a final
/// re-evaluation pass.
OptimizerResult spsa_minimize(const CostFunction &cost, std::vector<double> theta0,
                              const SpsaOptions &options);

struct ImfilOptions {
  double lower = -3.141592653589793;
  double upper = 3.141592653589793;
  long budget = 1000;       // cost evaluations
  int max_iterations = 150;
  double initial_step = 0.5;
  double min_step = 1e-3;
  /// First line-search trial moves no coordinate by more than ratio x h.
  double max_step_ratio = 2.0;
};

/// Implicit filtering: central-difference stencil of width h, a projected
/// backtracking line search along the stencil gradient, and h halved on
/// stencil failure. Stops on budget, iteration count or h < min_step.
OptimizerResult imfil_minimize(const CostFunction &cost, std::vector<double> theta0,
                               const ImfilOptions &options);

enum class Optimizer { spsa, imfil };
enum class Mitigation { none, zne, trex };

struct VqeConfig {
  Optimizer optimizer = Optimizer::spsa;
  int max_iterations = 150;
  long shots = 4096; // 0 = exact expectation values
  std::uint64_t seed = 0;
  int reps = 4;
  Entanglement entanglement = Entanglement::linear;
  double penalty = 0.0; // 0 = 2 x Gershgorin bound
  bool noisy = false;
  NoiseParams noise;
  Mitigation mitigation = Mitigation::none;
  ZneConfig zne;
  TrexConfig trex;
  double spsa_a = 0.0;
  double spsa_c = 0.1;
  double imfil_initial_step = 0.5;
  double imfil_min_step = 1e-3;

  void validate() const;
};

struct VqeResult {
  int num_qubits = 0;
  std::vector<double> theta;
  std::vector<double> energy_trace;
  /// Exact <H> of the ideal optimized state on the padded Hamiltonian.
  double final_energy = 0.0;
  /// First N real amplitudes of the ideal optimized state, sign fixed so
  /// that sum b_n I_n > 0 (unit 2-norm on the full register, not yet
  /// normalized to unit probability).
  std::vector<double> amplitudes;
  /// Squared norm on the padded states; flagged above 0.05.
  double leakage = 0.0;
  bool leakage_flag = false;
  long evaluations = 0;
};

VqeResult run_vqe(const FpeHamiltonian &h, const VqeConfig &config);

} // namespace fpedss
