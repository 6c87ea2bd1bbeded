#pragma once

#include "linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace fpedss {

// Bit ordering: qubit 0 is the least-significant bit of a computational-basis
// index. Bitstrings and Pauli words are written with qubit q-1 leftmost and
// qubit 0 rightmost.

enum class GateKind { h, x, y, z, s, sdg, rx, ry, rz, cx, cphase, swap, unitary };

struct Gate {
  GateKind kind = GateKind::h;
  /// cx: {control, target}. unitary: targets[0] is the least-significant bit
  /// of the payload's local index.
  std::vector<int> targets;
  double angle = 0.0;
  std::shared_ptr<const ComplexMatrix> matrix;

  static Gate make(GateKind kind, std::vector<int> targets, double angle = 0.0) {
    return {kind, std::move(targets), angle, nullptr};
  }
  /// Dense unitary gate; the payload must satisfy U^† U = I within 1e-12.
  static Gate dense(std::vector<int> targets, ComplexMatrix u);

  int arity() const noexcept { return static_cast<int>(targets.size()); }
  bool is_single_qubit() const noexcept { return targets.size() == 1; }
  ComplexMatrix local_matrix() const;
  Gate inverse() const;
};

class Circuit {
public:
  explicit Circuit(int num_qubits = 1);

  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate> &gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  Circuit &add(Gate g);
  Circuit &h(int q) { return add(Gate::make(GateKind::h, {q})); }
  Circuit &x(int q) { return add(Gate::make(GateKind::x, {q})); }
  Circuit &y(int q) { return add(Gate::make(GateKind::y, {q})); }
  Circuit &z(int q) { return add(Gate::make(GateKind::z, {q})); }
  Circuit &s(int q) { return add(Gate::make(GateKind::s, {q})); }
  Circuit &sdg(int q) { return add(Gate::make(GateKind::sdg, {q})); }
  Circuit &rx(int q, double theta) { return add(Gate::make(GateKind::rx, {q}, theta)); }
  Circuit &ry(int q, double theta) { return add(Gate::make(GateKind::ry, {q}, theta)); }
  Circuit &rz(int q, double theta) { return add(Gate::make(GateKind::rz, {q}, theta)); }
  Circuit &cx(int control, int target) { return add(Gate::make(GateKind::cx, {control, target})); }
  Circuit &cphase(int a, int b, double phi) { return add(Gate::make(GateKind::cphase, {a, b}, phi)); }
  Circuit &swap(int a, int b) { return add(Gate::make(GateKind::swap, {a, b})); }
  Circuit &unitary(std::vector<int> targets, ComplexMatrix u) {
    return add(Gate::dense(std::move(targets), std::move(u)));
  }

  Circuit &append(const Circuit &other);
  /// Reverse order with every gate replaced by its adjoint.
  Circuit inverse() const;

private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

class Statevector {
public:
  /// |0...0> on `num_qubits` qubits.
  explicit Statevector(int num_qubits);
  /// Takes ownership of amplitudes; requires length 2^q and unit norm (1e-12).
  Statevector(int num_qubits, std::vector<Complex> amplitudes);
  static Statevector basis_state(int num_qubits, std::size_t index);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  void apply(const Gate &g);
  double norm() const;
  std::vector<double> probabilities() const;

private:
  int num_qubits_;
  std::vector<Complex> amps_;
};

class DensityMatrix {
public:
  /// |0...0><0...0|. Supports at most 6 qubits.
  explicit DensityMatrix(int num_qubits);
  static DensityMatrix from_statevector(const Statevector &psi);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return dim_; }
  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  void apply(const Gate &g);
  /// rho -> (1-p) rho + p (I / 2^k) ⊗ Tr_S(rho) on the k qubits in S.
  void depolarize(std::span<const int> qubits, double p);

  double trace() const;
  std::vector<double> probabilities() const;
  ComplexMatrix to_matrix() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;

private:
  friend double pauli_expectation(const DensityMatrix &, const std::string &);
  int num_qubits_;
  std::size_t dim_;
  std::vector<Complex> data_; // row-major, index r * dim + c
};

Statevector apply_circuit(Statevector state, const Circuit &circuit);
DensityMatrix apply_circuit(DensityMatrix state, const Circuit &circuit);

/// c * P with P a tensor product of I/X/Y/Z, qubit q-1 leftmost.
struct PauliTerm {
  double coefficient = 0.0;
  std::string word;

  friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

double pauli_expectation(const Statevector &psi, const std::string &word);
double pauli_expectation(const DensityMatrix &rho, const std::string &word);
/// Qubits on which the word acts non-trivially, as a bit mask.
std::uint64_t pauli_support(const std::string &word);
/// Gates mapping the word's eigenbasis onto the computational basis
/// (H for X, S^† then H for Y).
Circuit basis_rotation(const std::string &word);

/// All 4^q coefficients c_i = Tr(P_i H) / 2^q, terms with |c_i| < 1e-14 dropped.
std::vector<PauliTerm> pauli_decompose(const RealMatrix &h);
ComplexMatrix pauli_sum_matrix(std::span<const PauliTerm> terms, int num_qubits);

/// max_i sum_j |H_ij|, an upper bound on the spectral radius.
double gershgorin_bound(const RealMatrix &h);

struct PaddedHamiltonian {
  RealMatrix matrix;
  int num_qubits = 1;
  int original_dimension = 1;
  double penalty = 0.0;
};

/// Embeds H top-left in a 2^q x 2^q matrix, q = max(1, ceil(log2 N)), and puts
/// `penalty` on the padded diagonal. Rejects penalty <= Gershgorin bound.
PaddedHamiltonian pad_hamiltonian(const RealMatrix &h, double penalty);
/// Same with penalty = 2 x Gershgorin bound.
PaddedHamiltonian pad_hamiltonian(const RealMatrix &h);

enum class PhaseWrap {
  reject, // require tau * max|lambda| < 2 pi
  allow   // eigenphases may wrap around the unit circle
};

/// exp(i tau H) through the symmetric eigendecomposition of H.
ComplexMatrix matrix_exponential_unitary(const RealMatrix &h, double tau,
                                         PhaseWrap wrap = PhaseWrap::reject);
/// pi / Gershgorin bound, keeping every eigenphase in [0, pi).
double default_time_scale(const RealMatrix &h);

using Counts = std::map<std::string, long>;

std::string bitstring(std::size_t index, int num_qubits);
/// Multinomial draw of `shots` outcomes from a (not necessarily normalized)
/// probability vector. Returns per-outcome counts.
std::vector<long> sample_outcome_counts(std::span<const double> probabilities, long shots,
                                        std::mt19937_64 &rng);
Counts sample_measurements(const Statevector &psi, long shots, std::uint64_t seed);
Counts sample_measurements(const DensityMatrix &rho, long shots, std::uint64_t seed);

} // namespace fpedss
