#pragma once

#include "quantum_core.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fpedss {

/// Gate-level depolarizing strengths and per-qubit readout flip probabilities.
struct NoiseParams {
  double p1 = 0.001;          // after every single-qubit gate
  double p2 = 0.01;           // after every multi-qubit gate, on its support
  double readout_p01 = 0.02;  // P(read 1 | prepared 0)
  double readout_p10 = 0.02;  // P(read 0 | prepared 1)

  void validate() const;
  static NoiseParams noiseless() { return {0.0, 0.0, 0.0, 0.0}; }
};

/// Density-matrix simulation of `circuit` from |0...0> (or `initial`) with a
/// local depolarizing channel after each gate. Readout noise is not applied
/// here; see measured_distribution.
DensityMatrix apply_noise(const Circuit &circuit, const NoiseParams &noise);
DensityMatrix apply_noise(DensityMatrix initial, const Circuit &circuit, const NoiseParams &noise);

/// Pushes a computational-basis distribution through the per-qubit readout
/// confusion matrix.
std::vector<double> apply_readout_confusion(std::span<const double> probabilities, int num_qubits,
                                            const NoiseParams &noise);

/// sum_i c_i <P_i> for the state prepared by `circuit` under `noise`. Each
/// non-identity word is measured after its (noisy) basis rotation, with
/// readout noise. shots = 0 gives the exact expectation of the noisy
/// measurement statistics; otherwise shots are split evenly over the words.
double noisy_expectation(const Circuit &circuit, std::span<const PauliTerm> terms,
                         const NoiseParams &noise, long shots, std::uint64_t seed);

enum class Extrapolation { linear, quadratic };

struct ZneConfig {
  std::vector<int> scale_factors{1, 3, 5};
  Extrapolation extrapolation = Extrapolation::quadratic;

  /// Odd, strictly increasing, first factor 1.
  void validate() const;
};

/// Global unitary folding G -> G (G^† G)^{(scale-1)/2} for odd scale >= 1.
Circuit fold_circuit(const Circuit &circuit, int scale);

/// Least-squares polynomial of the configured order through (scale, value),
/// evaluated at scale 0. Throws if there are fewer points than order + 1.
double extrapolate_to_zero(std::span<const double> scales, std::span<const double> values,
                           Extrapolation order);

/// Evaluates `expectation_at_scale` at each configured factor and extrapolates.
double zne_extrapolate(const std::function<double(int scale)> &expectation_at_scale,
                       const ZneConfig &zne);

double zne_expectation(const Circuit &circuit, std::span<const PauliTerm> terms,
                       const NoiseParams &noise, const ZneConfig &zne, long shots,
                       std::uint64_t seed);

struct TrexConfig {
  int num_twirls = 16;
  long calibration_shots = 4096;

  void validate() const;
};

/// Twirled readout: random X masks before measurement, classical un-flip,
/// and division by the twirled attenuation measured on |0...0> calibration
/// runs. Throws NumericalError if a calibration factor falls below 0.1.
double trex_expectation(const Circuit &circuit, std::span<const PauliTerm> terms,
                        const NoiseParams &noise, const TrexConfig &trex, long shots,
                        std::uint64_t seed);

} // namespace fpedss
