#include "noise_mitigation.hpp"

#include "errors.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace fpedss {

namespace {

bool is_identity(const std::string &word) {
  return word.find_first_not_of('I') == std::string::npos;
}

double parity_sign(std::uint64_t outcome, std::uint64_t support) {
  return std::popcount(outcome & support) % 2 ? -1.0 : 1.0;
}

// Mean of the parity over a distribution, either exactly or from `shots` draws.
double parity_estimate(std::span<const double> probs, std::uint64_t support, long shots,
                       std::mt19937_64 &rng, std::uint64_t unflip = 0) {
  double e = 0.0;
  if (shots <= 0) {
    for (std::size_t k = 0; k < probs.size(); ++k)
      e += probs[k] * parity_sign(k ^ unflip, support);
    return e;
  }
  const std::vector<long> counts = sample_outcome_counts(probs, shots, rng);
  for (std::size_t k = 0; k < counts.size(); ++k)
    e += static_cast<double>(counts[k]) * parity_sign(k ^ unflip, support);
  return e / static_cast<double>(shots);
}

long shots_per_word(long shots, std::size_t words) {
  if (shots <= 0 || words == 0)
    return 0;
  return std::max(1L, shots / static_cast<long>(words));
}

std::size_t count_measured_words(std::span<const PauliTerm> terms) {
  std::size_t n = 0;
  for (const PauliTerm &t : terms)
    n += is_identity(t.word) ? 0 : 1;
  return n;
}

} // namespace

void NoiseParams::validate() const {
  for (double p : {p1, p2, readout_p01, readout_p10})
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("noise: probabilities must lie in [0, 1]");
}

DensityMatrix apply_noise(DensityMatrix rho, const Circuit &circuit, const NoiseParams &noise) {
  noise.validate();
  if (rho.num_qubits() != circuit.num_qubits())
    throw std::invalid_argument("apply_noise: state and circuit qubit counts differ");
  for (const Gate &g : circuit.gates()) {
    rho.apply(g);
    rho.depolarize(g.targets, g.is_single_qubit() ? noise.p1 : noise.p2);
  }
  return rho;
}

DensityMatrix apply_noise(const Circuit &circuit, const NoiseParams &noise) {
  return apply_noise(DensityMatrix(circuit.num_qubits()), circuit, noise);
}

std::vector<double> apply_readout_confusion(std::span<const double> probabilities, int num_qubits,
                                            const NoiseParams &noise) {
  if (probabilities.size() != (std::size_t{1} << num_qubits))
    throw std::invalid_argument("apply_readout_confusion: distribution length is not 2^q");
  std::vector<double> p(probabilities.begin(), probabilities.end());
  if (noise.readout_p01 == 0.0 && noise.readout_p10 == 0.0)
    return p;
  for (int q = 0; q < num_qubits; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k & bit)
        continue;
      const double p0 = p[k], p1 = p[k | bit];
      p[k] = (1.0 - noise.readout_p01) * p0 + noise.readout_p10 * p1;
      p[k | bit] = noise.readout_p01 * p0 + (1.0 - noise.readout_p10) * p1;
    }
  }
  return p;
}

double noisy_expectation(const Circuit &circuit, std::span<const PauliTerm> terms,
                         const NoiseParams &noise, long shots, std::uint64_t seed) {
  const int q = circuit.num_qubits();
  const DensityMatrix prepared = apply_noise(circuit, noise);
  const long per_word = shots_per_word(shots, count_measured_words(terms));
  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (const PauliTerm &t : terms) {
    if (is_identity(t.word)) {
      total += t.coefficient;
      continue;
    }
    const DensityMatrix rotated = apply_noise(prepared, basis_rotation(t.word), noise);
    const std::vector<double> measured =
        apply_readout_confusion(rotated.probabilities(), q, noise);
    total += t.coefficient * parity_estimate(measured, pauli_support(t.word), per_word, rng);
  }
  return total;
}

// ---------------------------------------------------------------- ZNE

void ZneConfig::validate() const {
  if (scale_factors.empty() || scale_factors.front() != 1)
    throw std::invalid_argument("zne: scale factors must start at 1");
  for (std::size_t i = 0; i < scale_factors.size(); ++i) {
    if (scale_factors[i] < 1 || scale_factors[i] % 2 == 0)
      throw std::invalid_argument("zne: scale factors must be odd positive integers");
    if (i > 0 && scale_factors[i] <= scale_factors[i - 1])
      throw std::invalid_argument("zne: scale factors must be strictly increasing");
  }
}

Circuit fold_circuit(const Circuit &circuit, int scale) {
  if (scale < 1 || scale % 2 == 0)
    throw std::invalid_argument("fold_circuit: scale must be an odd integer >= 1");
  Circuit folded = circuit;
  const Circuit inv = circuit.inverse();
  for (int k = 0; k < (scale - 1) / 2; ++k) {
    folded.append(inv);
    folded.append(circuit);
  }
  return folded;
}

double extrapolate_to_zero(std::span<const double> scales, std::span<const double> values,
                           Extrapolation order) {
  const std::size_t degree = order == Extrapolation::linear ? 1 : 2;
  const std::size_t cols = degree + 1;
  if (scales.size() != values.size())
    throw std::invalid_argument("extrapolate_to_zero: scale/value length mismatch");
  if (scales.size() < cols)
    throw NumericalError("extrapolate_to_zero: need at least order + 1 points");

  // Normal equations of the Vandermonde least-squares problem; at most 3x3.
  double ata[3][3] = {}, atb[3] = {};
  for (std::size_t i = 0; i < scales.size(); ++i) {
    double pw[3] = {1.0, scales[i], scales[i] * scales[i]};
    for (std::size_t r = 0; r < cols; ++r) {
      atb[r] += pw[r] * values[i];
      for (std::size_t c = 0; c < cols; ++c)
        ata[r][c] += pw[r] * pw[c];
    }
  }
  for (std::size_t k = 0; k < cols; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < cols; ++r)
      if (std::abs(ata[r][k]) > std::abs(ata[piv][k]))
        piv = r;
    if (std::abs(ata[piv][k]) < 1e-300)
      throw NumericalError("extrapolate_to_zero: singular fit (repeated scale factors?)");
    std::swap(ata[k], ata[piv]);
    std::swap(atb[k], atb[piv]);
    for (std::size_t r = k + 1; r < cols; ++r) {
      const double f = ata[r][k] / ata[k][k];
      for (std::size_t c = k; c < cols; ++c)
        ata[r][c] -= f * ata[k][c];
      atb[r] -= f * atb[k];
    }
  }
  double coef[3] = {};
  for (std::size_t k = cols; k-- > 0;) {
    double s = atb[k];
    for (std::size_t c = k + 1; c < cols; ++c)
      s -= ata[k][c] * coef[c];
    coef[k] = s / ata[k][k];
  }
  return coef[0];
}

double zne_extrapolate(const std::function<double(int scale)> &expectation_at_scale,
                       const ZneConfig &zne) {
  zne.validate();
  std::vector<double> scales, values;
  for (int s : zne.scale_factors) {
    scales.push_back(static_cast<double>(s));
    values.push_back(expectation_at_scale(s));
  }
  return extrapolate_to_zero(scales, values, zne.extrapolation);
}

double zne_expectation(const Circuit &circuit, std::span<const PauliTerm> terms,
                       const NoiseParams &noise, const ZneConfig &zne, long shots,
                       std::uint64_t seed) {
  return zne_extrapolate(
      [&](int scale) {
        return noisy_expectation(fold_circuit(circuit, scale), terms, noise, shots,
                                 seed + static_cast<std::uint64_t>(scale));
      },
      zne);
}

// ---------------------------------------------------------------- TREX

void TrexConfig::validate() const {
  if (num_twirls < 1)
    throw std::invalid_argument("trex: num_twirls must be >= 1");
  if (calibration_shots < 0)
    throw std::invalid_argument("trex: calibration_shots must be >= 0");
}

namespace {

// Average over twirls of the un-flipped parity for one measured distribution.
double twirled_parity(std::span<const double> ideal, int q, std::uint64_t support,
                      const NoiseParams &noise, int twirls, long shots, std::mt19937_64 &rng) {
  const std::size_t dim = ideal.size();
  std::uniform_int_distribution<std::uint64_t> mask_dist(0, dim - 1);
  const long per_twirl = shots > 0 ? std::max(1L, shots / twirls) : 0;
  std::vector<double> flipped(dim);
  double acc = 0.0;
  for (int t = 0; t < twirls; ++t) {
    const std::uint64_t mask = mask_dist(rng);
    for (std::size_t k = 0; k < dim; ++k)
      flipped[k ^ mask] = ideal[k];
    const std::vector<double> measured = apply_readout_confusion(flipped, q, noise);
    acc += parity_estimate(measured, support, per_twirl, rng, mask);
  }
  return acc / twirls;
}

} // namespace

double trex_expectation(const Circuit &circuit, std::span<const PauliTerm> terms,
                        const NoiseParams &noise, const TrexConfig &trex, long shots,
                        std::uint64_t seed) {
  trex.validate();
  const int q = circuit.num_qubits();
  const DensityMatrix prepared = apply_noise(circuit, noise);
  const std::size_t words = count_measured_words(terms);
  const long per_word = shots_per_word(shots, words);
  const long calib_per_word = shots > 0 ? std::max(1L, trex.calibration_shots) : 0;
  std::mt19937_64 rng(seed);

  std::vector<double> zero_state(std::size_t{1} << q, 0.0);
  zero_state[0] = 1.0;
  std::map<std::uint64_t, double> calibration;

  double total = 0.0;
  for (const PauliTerm &t : terms) {
    if (is_identity(t.word)) {
      total += t.coefficient;
      continue;
    }
    const std::uint64_t support = pauli_support(t.word);
    auto it = calibration.find(support);
    if (it == calibration.end()) {
      const double f =
          twirled_parity(zero_state, q, support, noise, trex.num_twirls, calib_per_word, rng);
      if (f < 0.1)
        throw NumericalError("trex: calibration factor " + std::to_string(f) +
                             " below 0.1, readout correction unreliable");
      it = calibration.emplace(support, f).first;
    }
    const DensityMatrix rotated = apply_noise(prepared, basis_rotation(t.word), noise);
    const double raw =
        twirled_parity(rotated.probabilities(), q, support, noise, trex.num_twirls, per_word, rng);
    total += t.coefficient * raw / it->second;
  }
  return total;
}

} // namespace fpedss
