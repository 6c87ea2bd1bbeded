#include "vqe.hpp"

#include "errors.hpp"
#include "hermite_basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fpedss {

void AnsatzSpec::validate() const {
  if (num_qubits < 1)
    throw std::invalid_argument("ansatz: num_qubits must be >= 1");
  if (reps < 0)
    throw std::invalid_argument("ansatz: reps must be >= 0");
}

Circuit build_ansatz(const AnsatzSpec &spec, std::span<const double> theta) {
  spec.validate();
  if (theta.size() != static_cast<std::size_t>(spec.num_parameters()))
    throw std::invalid_argument("build_ansatz: expected " +
                                std::to_string(spec.num_parameters()) + " parameters");
  const int q = spec.num_qubits;
  Circuit c(q);
  std::size_t p = 0;
  for (int i = 0; i < q; ++i)
    c.ry(i, theta[p++]);
  for (int r = 0; r < spec.reps; ++r) {
    if (spec.entanglement == Entanglement::linear) {
      for (int i = 0; i + 1 < q; ++i)
        c.cx(i, i + 1);
    } else {
      for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
          c.cx(i, j);
    }
    for (int i = 0; i < q; ++i)
      c.ry(i, theta[p++]);
  }
  return c;
}

std::vector<double> real_amplitudes(const Statevector &psi) {
  const auto amps = psi.amplitudes();
  std::size_t largest = 0;
  for (std::size_t i = 1; i < amps.size(); ++i)
    if (std::abs(amps[i]) > std::abs(amps[largest]))
      largest = i;
  const Complex phase = std::conj(amps[largest]) / std::abs(amps[largest]);
  std::vector<double> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i)
    out[i] = (amps[i] * phase).real();
  return out;
}

double expectation(std::span<const PauliTerm> terms, const Statevector &psi, long shots,
                   std::uint64_t seed) {
  auto is_identity = [](const std::string &w) {
    return w.find_first_not_of('I') == std::string::npos;
  };
  double total = 0.0;
  if (shots <= 0) {
    for (const PauliTerm &t : terms)
      total += t.coefficient * (is_identity(t.word) ? 1.0 : pauli_expectation(psi, t.word));
    return total;
  }
  const long words = std::count_if(terms.begin(), terms.end(),
                                   [&](const PauliTerm &t) { return !is_identity(t.word); });
  const long per_word = std::max(1L, shots / std::max(1L, words));
  std::mt19937_64 rng(seed);
  for (const PauliTerm &t : terms) {
    if (is_identity(t.word)) {
      total += t.coefficient;
      continue;
    }
    const Statevector rotated = apply_circuit(psi, basis_rotation(t.word));
    const std::vector<long> counts = sample_outcome_counts(rotated.probabilities(), per_word, rng);
    const std::uint64_t support = pauli_support(t.word);
    long signed_sum = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
      signed_sum += std::popcount(k & support) % 2 ? -counts[k] : counts[k];
    total += t.coefficient * static_cast<double>(signed_sum) / static_cast<double>(per_word);
  }
  return total;
}

// ---------------------------------------------------------------- SPSA

OptimizerResult spsa_minimize(const CostFunction &cost, std::vector<double> theta,
                              const SpsaOptions &o) {
  if (o.max_iterations < 1)
    throw std::invalid_argument("spsa: max_iterations must be >= 1");
  if (!(o.c > 0.0))
    throw std::invalid_argument("spsa: c must be positive");
  const std::size_t dim = theta.size();
  const double big_a = o.stability >= 0.0 ? o.stability : 0.1 * o.max_iterations;
  std::mt19937_64 rng(o.seed);
  std::bernoulli_distribution coin(0.5);
  OptimizerResult res;

  auto perturbation = [&] {
    std::vector<double> delta(dim);
    for (double &d : delta)
      d = coin(rng) ? 1.0 : -1.0;
    return delta;
  };
  auto shifted = [&](const std::vector<double> &base, const std::vector<double> &delta,
                     double step) {
    std::vector<double> out(base);
    for (std::size_t i = 0; i < dim; ++i)
      out[i] += step * delta[i];
    return out;
  };
  auto eval = [&](const std::vector<double> &t) {
    ++res.evaluations;
    return cost(t);
  };

  double a = o.a;
  if (a <= 0.0) {
    double magnitude = 0.0;
    const int probes = std::max(1, o.calibration_probes);
    for (int i = 0; i < probes; ++i) {
      const std::vector<double> delta = perturbation();
      const double diff = eval(shifted(theta, delta, o.c)) - eval(shifted(theta, delta, -o.c));
      magnitude += std::abs(diff / (2.0 * o.c));
    }
    magnitude /= probes;
    a = magnitude > 0.0 ? o.target_first_step / magnitude * std::pow(big_a + 1.0, o.alpha)
                        : o.target_first_step;
  }

  std::vector<std::vector<double>> iterates{theta};
  for (int k = 0; k < o.max_iterations; ++k) {
    const double ak = a / std::pow(big_a + k + 1.0, o.alpha);
    const double ck = o.c / std::pow(k + 1.0, o.gamma);
    const std::vector<double> delta = perturbation();
    const double fp = eval(shifted(theta, delta, ck));
    const double fm = eval(shifted(theta, delta, -ck));
    const double g = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < dim; ++i)
      theta[i] -= ak * g * delta[i];
    res.energy_trace.push_back(0.5 * (fp + fm));
    iterates.push_back(theta);
  }

  res.cost = std::numeric_limits<double>::infinity();
  for (const auto &t : iterates) {
    const double f = eval(t);
    if (f < res.cost) {
      res.cost = f;
      res.theta = t;
    }
  }
  return res;
}

// ---------------------------------------------------------------- IMFIL

OptimizerResult imfil_minimize(const CostFunction &cost, std::vector<double> theta,
                               const ImfilOptions &o) {
  if (!(o.lower < o.upper))
    throw std::invalid_argument("imfil: lower bound must be below upper bound");
  if (!(o.initial_step > 0.0) || !(o.min_step > 0.0))
    throw std::invalid_argument("imfil: step sizes must be positive");
  const std::size_t dim = theta.size();
  auto clip = [&](std::vector<double> &t) {
    for (double &v : t)
      v = std::clamp(v, o.lower, o.upper);
  };
  OptimizerResult res;
  auto eval = [&](const std::vector<double> &t) {
    ++res.evaluations;
    return cost(t);
  };

  clip(theta);
  double f = eval(theta);
  double h = o.initial_step;
  for (int iter = 0; iter < o.max_iterations && h >= o.min_step && res.evaluations < o.budget;
       ++iter) {
    std::vector<double> grad(dim, 0.0);
    std::vector<double> best_point = theta;
    double best = f;
    for (std::size_t i = 0; i < dim && res.evaluations < o.budget; ++i) {
      std::vector<double> tp = theta, tm = theta;
      tp[i] = std::min(theta[i] + h, o.upper);
      tm[i] = std::max(theta[i] - h, o.lower);
      const double fp = eval(tp), fm = eval(tm);
      if (tp[i] > tm[i])
        grad[i] = (fp - fm) / (tp[i] - tm[i]);
      if (fp < best) {
        best = fp;
        best_point = tp;
      }
      if (fm < best) {
        best = fm;
        best_point = tm;
      }
    }

    if (best < f) {
      const double g2 = std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
      double gmax = 0.0;
      for (double gi : grad)
        gmax = std::max(gmax, std::abs(gi));
      double lambda = gmax > 0.0 ? std::min(1.0, o.max_step_ratio * h / gmax) : 1.0;
      for (int back = 0; back < 20 && res.evaluations < o.budget && g2 > 0.0; ++back) {
        std::vector<double> trial = theta;
        for (std::size_t i = 0; i < dim; ++i)
          trial[i] -= lambda * grad[i];
        clip(trial);
        const double ft = eval(trial);
        if (ft < f - 1e-4 * lambda * g2) {
          if (ft < best) {
            best = ft;
            best_point = trial;
          }
          break;
        }
        lambda *= 0.5;
      }
      theta = best_point;
      f = best;
    } else {
      h *= 0.5;
    }
    res.energy_trace.push_back(f);
  }
  res.theta = theta;
  res.cost = f;
  return res;
}

// ---------------------------------------------------------------- driver

void VqeConfig::validate() const {
  if (max_iterations < 1)
    throw std::invalid_argument("vqe: max_iterations must be >= 1");
  if (shots < 0)
    throw std::invalid_argument("vqe: shots must be >= 0");
  if (reps < 0)
    throw std::invalid_argument("vqe: reps must be >= 0");
  if (penalty < 0.0)
    throw std::invalid_argument("vqe: penalty must be >= 0");
  if (mitigation != Mitigation::none && !noisy)
    throw std::invalid_argument("vqe: mitigation requires the noisy backend");
  noise.validate();
  zne.validate();
  trex.validate();
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

} // namespace

VqeResult run_vqe(const FpeHamiltonian &h, const VqeConfig &config) {
  config.validate();
  const PaddedHamiltonian padded = config.penalty > 0.0 ? pad_hamiltonian(h.entries, config.penalty)
                                                        : pad_hamiltonian(h.entries);
  const std::vector<PauliTerm> terms = pauli_decompose(padded.matrix);
  const AnsatzSpec ansatz{padded.num_qubits, config.reps, config.entanglement};

  std::mt19937_64 init_rng(config.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<double> theta0(static_cast<std::size_t>(ansatz.num_parameters()));
  for (double &t : theta0)
    t = angle(init_rng);

  std::uint64_t counter = 0;
  const CostFunction cost = [&](std::span<const double> theta) {
    const Circuit circuit = build_ansatz(ansatz, theta);
    const std::uint64_t s = mix_seed(config.seed, counter++);
    if (!config.noisy)
      return expectation(terms, apply_circuit(Statevector(ansatz.num_qubits), circuit),
                         config.shots, s);
    switch (config.mitigation) {
    case Mitigation::zne:
      return zne_expectation(circuit, terms, config.noise, config.zne, config.shots, s);
    case Mitigation::trex:
      return trex_expectation(circuit, terms, config.noise, config.trex, config.shots, s);
    case Mitigation::none:
      break;
    }
    return noisy_expectation(circuit, terms, config.noise, config.shots, s);
  };

  OptimizerResult opt;
  if (config.optimizer == Optimizer::spsa) {
    SpsaOptions o;
    o.max_iterations = config.max_iterations;
    o.a = config.spsa_a;
    o.c = config.spsa_c;
    o.seed = mix_seed(config.seed, 0xC0FFEE);
    opt = spsa_minimize(cost, theta0, o);
  } else {
    ImfilOptions o;
    o.max_iterations = config.max_iterations;
    o.budget = static_cast<long>(config.max_iterations) * (2L * ansatz.num_parameters() + 21);
    o.initial_step = config.imfil_initial_step;
    o.min_step = config.imfil_min_step;
    opt = imfil_minimize(cost, theta0, o);
  }

  VqeResult res;
  res.num_qubits = padded.num_qubits;
  res.theta = opt.theta;
  res.energy_trace = std::move(opt.energy_trace);
  res.evaluations = opt.evaluations;
  const Statevector psi = apply_circuit(Statevector(ansatz.num_qubits), build_ansatz(ansatz, opt.theta));
  res.final_energy = expectation(terms, psi, 0, 0);

  const std::vector<double> amps = real_amplitudes(psi);
  const auto n = static_cast<std::size_t>(padded.original_dimension);
  res.amplitudes.assign(amps.begin(), amps.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = n; i < amps.size(); ++i)
    res.leakage += amps[i] * amps[i];
  res.leakage_flag = res.leakage > 0.05;

  const BasisIntegrals integrals = basis_integrals(h.source.basis);
  double l1 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    l1 += res.amplitudes[i] * integrals.norm_integrals[i];
  if (l1 < 0.0)
    for (double &b : res.amplitudes)
      b = -b;
  return res;
}

} // namespace fpedss
