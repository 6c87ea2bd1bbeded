#include "qpe.hpp"

#include "errors.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpedss {

Circuit qft_circuit(int num_qubits) {
  Circuit c(num_qubits);
  for (int j = num_qubits - 1; j >= 0; --j) {
    c.h(j);
    for (int k = j - 1; k >= 0; --k)
      c.cphase(k, j, std::numbers::pi / static_cast<double>(1 << (j - k)));
  }
  for (int i = 0; i < num_qubits / 2; ++i)
    c.swap(i, num_qubits - 1 - i);
  return c;
}

Circuit build_qpe_circuit(const ComplexMatrix &u, int num_precision_qubits) {
  if (num_precision_qubits < 1)
    throw std::invalid_argument("build_qpe_circuit: need at least one precision qubit");
  if (!u.square() || u.rows() < 2 || !std::has_single_bit(u.rows()))
    throw std::invalid_argument("build_qpe_circuit: U dimension must be a power of two >= 2");
  const int n = std::countr_zero(u.rows());
  const int t = num_precision_qubits;
  Circuit c(t + n);
  for (int k = 0; k < t; ++k)
    c.h(k);

  std::vector<int> targets;
  for (int q = 0; q < n; ++q)
    targets.push_back(t + q);
  targets.push_back(0); // control slot, most significant local bit

  const std::size_t d = u.rows();
  ComplexMatrix power = u;
  for (int k = 0; k < t; ++k) {
    ComplexMatrix cu = ComplexMatrix::identity(2 * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        cu(d + i, d + j) = power(i, j);
    targets.back() = k;
    c.unitary(targets, std::move(cu));
    if (k + 1 < t)
      power = power * power;
  }

  const Circuit iqft = qft_circuit(t).inverse();
  for (const Gate &g : iqft.gates())
    c.add(g); // precision qubits share indices 0..t-1
  return c;
}

Statevector qpe_initial_state(std::span<const Complex> query_state, int num_precision_qubits) {
  if (query_state.size() < 2 || !std::has_single_bit(query_state.size()))
    throw std::invalid_argument("qpe_initial_state: query state length must be a power of two");
  const int n = std::countr_zero(query_state.size());
  const int t = num_precision_qubits;
  std::vector<Complex> amps(std::size_t{1} << (n + t), 0.0);
  for (std::size_t m = 0; m < query_state.size(); ++m)
    amps[m << t] = query_state[m];
  return Statevector(n + t, std::move(amps));
}

QpeResult run_qpe(const ComplexMatrix &u, const QpeConfig &config, int reported_states) {
  const std::size_t d = u.rows();
  std::vector<Complex> init = config.init_query_state;
  if (init.empty())
    init.assign(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
  if (init.size() != d)
    throw std::invalid_argument("run_qpe: initial query state has wrong dimension");
  if (reported_states < 1 || static_cast<std::size_t>(reported_states) > d)
    throw std::invalid_argument("run_qpe: reported_states outside [1, dim U]");

  const int t = config.num_precision_qubits;
  const Circuit circuit = build_qpe_circuit(u, t);
  const Statevector out = apply_circuit(qpe_initial_state(init, t), circuit);
  const std::vector<double> probs = out.probabilities();
  const std::size_t bins = std::size_t{1} << t;

  QpeResult r;
  r.num_precision_qubits = t;
  r.num_query_qubits = std::countr_zero(d);
  std::vector<double> marginal(bins, 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i)
    marginal[i & (bins - 1)] += probs[i];
  for (std::size_t j = 0; j < bins; ++j)
    if (marginal[j] > 0.0)
      r.phase_distribution.emplace(bitstring(j, t), marginal[j]);

  r.query_distribution.assign(d, 0.0);
  if (config.shots <= 0) {
    r.zero_bin_fraction = marginal[0];
    if (marginal[0] > 0.0)
      for (std::size_t m = 0; m < d; ++m)
        r.query_distribution[m] = probs[m << t] / marginal[0];
  } else {
    r.sampled = true;
    std::mt19937_64 rng(config.seed);
    const std::vector<long> counts = sample_outcome_counts(probs, config.shots, rng);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0)
        continue;
      r.phase_histogram[bitstring(i & (bins - 1), t)] += counts[i];
      if ((i & (bins - 1)) == 0) {
        r.zero_bin_shots += counts[i];
        r.query_distribution[i >> t] += static_cast<double>(counts[i]);
      }
    }
    r.zero_bin_fraction = static_cast<double>(r.zero_bin_shots) / static_cast<double>(config.shots);
    if (r.zero_bin_shots > 0)
      for (double &q : r.query_distribution)
        q /= static_cast<double>(r.zero_bin_shots);
  }
  for (int m = 0; m < reported_states; ++m)
    r.abs_amplitudes.push_back(std::sqrt(r.query_distribution[static_cast<std::size_t>(m)]));
  return r;
}

QpeResult qpe_zero_mode(const PaddedHamiltonian &h, const QpeConfig &config,
                        std::optional<std::span<const double>> sign_reference) {
  if (!(config.time_scale > 0.0))
    throw std::invalid_argument("qpe: time scale must be positive");
  const ComplexMatrix u = matrix_exponential_unitary(h.matrix, config.time_scale, PhaseWrap::allow);
  QpeResult r = run_qpe(u, config, h.original_dimension);
  if (r.zero_bin_fraction < 0.01)
    throw NumericalError("qpe: zero-phase bin holds less than 1% of the probability or shots");
  if (sign_reference) {
    if (sign_reference->size() < r.abs_amplitudes.size())
      throw std::invalid_argument("qpe: sign reference shorter than the zero-mode");
    for (std::size_t k = 0; k < r.abs_amplitudes.size(); ++k)
      r.signed_amplitudes.push_back(std::copysign(r.abs_amplitudes[k], (*sign_reference)[k]));
  }
  return r;
}

} // namespace fpedss
