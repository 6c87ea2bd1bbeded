#include "quantum_core.hpp"

#include "errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpedss {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kMaxStatevectorQubits = 24;
constexpr int kMaxDensityQubits = 6;

int expected_arity(GateKind k) {
  switch (k) {
  case GateKind::cx:
  case GateKind::cphase:
  case GateKind::swap:
    return 2;
  case GateKind::unitary:
    return -1;
  default:
    return 1;
  }
}

// Applies a 2^k x 2^k matrix to the listed bit positions of a 2^n vector.
void apply_matrix(std::span<Complex> v, std::span<const int> bits, const ComplexMatrix &m) {
  const std::size_t k = bits.size();
  const std::size_t local = std::size_t{1} << k;
  std::vector<std::size_t> offsets(local, 0);
  std::size_t mask = 0;
  for (std::size_t b = 0; b < k; ++b)
    mask |= std::size_t{1} << bits[b];
  for (std::size_t j = 0; j < local; ++j)
    for (std::size_t b = 0; b < k; ++b)
      if (j >> b & 1U)
        offsets[j] |= std::size_t{1} << bits[b];

  if (k == 1) {
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    const std::size_t stride = offsets[1];
    for (std::size_t base = 0; base < v.size(); ++base) {
      if (base & mask)
        continue;
      const Complex a0 = v[base], a1 = v[base + stride];
      v[base] = m00 * a0 + m01 * a1;
      v[base + stride] = m10 * a0 + m11 * a1;
    }
    return;
  }

  std::vector<Complex> in(local), out(local);
  for (std::size_t base = 0; base < v.size(); ++base) {
    if (base & mask)
      continue;
    for (std::size_t j = 0; j < local; ++j)
      in[j] = v[base + offsets[j]];
    for (std::size_t i = 0; i < local; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < local; ++j)
        s += m(i, j) * in[j];
      out[i] = s;
    }
    for (std::size_t j = 0; j < local; ++j)
      v[base + offsets[j]] = out[j];
  }
}

ComplexMatrix conjugate(const ComplexMatrix &m) {
  ComplexMatrix c = m;
  for (Complex &z : c.data())
    z = std::conj(z);
  return c;
}

struct PauliMasks {
  std::uint64_t flip = 0;  // X or Y
  std::uint64_t phase = 0; // Z or Y
  int num_y = 0;
};

PauliMasks pauli_masks(const std::string &word) {
  PauliMasks m;
  const std::size_t q = word.size();
  for (std::size_t pos = 0; pos < q; ++pos) {
    const std::uint64_t bit = std::uint64_t{1} << (q - 1 - pos);
    switch (word[pos]) {
    case 'I':
      break;
    case 'X':
      m.flip |= bit;
      break;
    case 'Y':
      m.flip |= bit;
      m.phase |= bit;
      ++m.num_y;
      break;
    case 'Z':
      m.phase |= bit;
      break;
    default:
      throw std::invalid_argument("pauli word: invalid letter '" + std::string(1, word[pos]) + "'");
    }
  }
  return m;
}

// P|k> = i^{nY} (-1)^{popcount(k & phase)} |k ^ flip>
Complex pauli_phase(const PauliMasks &m, std::uint64_t k) {
  static constexpr Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex ph = powers[m.num_y % 4];
  if (std::popcount(k & m.phase) % 2)
    ph = -ph;
  return ph;
}

std::size_t checked_dimension(int q, int max_q) {
  if (q < 1 || q > max_q)
    throw std::invalid_argument("qubit count " + std::to_string(q) + " outside [1, " +
                                std::to_string(max_q) + "]");
  return std::size_t{1} << q;
}

} // namespace

// ---------------------------------------------------------------- gates

Gate Gate::dense(std::vector<int> targets, ComplexMatrix u) {
  const std::size_t local = std::size_t{1} << targets.size();
  if (targets.empty() || u.rows() != local || u.cols() != local)
    throw std::invalid_argument("dense gate: payload dimension does not match target count");
  const ComplexMatrix check = adjoint(u) * u;
  if (max_abs_difference(check, ComplexMatrix::identity(local)) > 1e-12)
    throw std::invalid_argument("dense gate: payload is not unitary within 1e-12");
  Gate g = make(GateKind::unitary, std::move(targets));
  g.matrix = std::make_shared<const ComplexMatrix>(std::move(u));
  return g;
}

ComplexMatrix Gate::local_matrix() const {
  const double r = 1.0 / std::numbers::sqrt2;
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  switch (kind) {
  case GateKind::h:
    return {{r, r}, {r, -r}};
  case GateKind::x:
    return {{0, 1}, {1, 0}};
  case GateKind::y:
    return {{0, -kI}, {kI, 0}};
  case GateKind::z:
    return {{1, 0}, {0, -1}};
  case GateKind::s:
    return {{1, 0}, {0, kI}};
  case GateKind::sdg:
    return {{1, 0}, {0, -kI}};
  case GateKind::rx:
    return {{c, -kI * s}, {-kI * s, c}};
  case GateKind::ry:
    return {{c, -s}, {s, c}};
  case GateKind::rz:
    return {{std::polar(1.0, -0.5 * angle), 0}, {0, std::polar(1.0, 0.5 * angle)}};
  case GateKind::cx: // local bit 0 = control, bit 1 = target
    return {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
  case GateKind::cphase:
    return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, std::polar(1.0, angle)}};
  case GateKind::swap:
    return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  case GateKind::unitary:
    return *matrix;
  }
  throw std::logic_error("Gate::local_matrix: unknown kind");
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
  case GateKind::s:
    g.kind = GateKind::sdg;
    break;
  case GateKind::sdg:
    g.kind = GateKind::s;
    break;
  case GateKind::rx:
  case GateKind::ry:
  case GateKind::rz:
  case GateKind::cphase:
    g.angle = -angle;
    break;
  case GateKind::unitary:
    g.matrix = std::make_shared<const ComplexMatrix>(adjoint(*matrix));
    break;
  default:
    break; // self-inverse
  }
  return g;
}

// ---------------------------------------------------------------- circuit

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1)
    throw std::invalid_argument("Circuit: need at least one qubit");
}

Circuit &Circuit::add(Gate g) {
  const int want = expected_arity(g.kind);
  if (want > 0 && g.arity() != want)
    throw std::invalid_argument("Circuit::add: wrong number of targets");
  if (g.kind == GateKind::unitary && (!g.matrix || g.matrix->rows() != (std::size_t{1} << g.arity())))
    throw std::invalid_argument("Circuit::add: dense gate without matching payload");
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    if (g.targets[i] < 0 || g.targets[i] >= num_qubits_)
      throw std::invalid_argument("Circuit::add: target index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (g.targets[i] == g.targets[j])
        throw std::invalid_argument("Circuit::add: repeated target");
  }
  gates_.push_back(std::move(g));
  return *this;
}

Circuit &Circuit::append(const Circuit &other) {
  if (other.num_qubits_ != num_qubits_)
    throw std::invalid_argument("Circuit::append: qubit count mismatch");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(num_qubits_);
  inv.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
    inv.gates_.push_back(it->inverse());
  return inv;
}

// ---------------------------------------------------------------- statevector

Statevector::Statevector(int num_qubits)
    : num_qubits_(num_qubits), amps_(checked_dimension(num_qubits, kMaxStatevectorQubits)) {
  amps_[0] = 1.0;
}

Statevector::Statevector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != checked_dimension(num_qubits, kMaxStatevectorQubits))
    throw std::invalid_argument("Statevector: amplitude count is not 2^q");
  if (std::abs(norm() - 1.0) > 1e-12)
    throw std::invalid_argument("Statevector: amplitudes not normalized");
}

Statevector Statevector::basis_state(int num_qubits, std::size_t index) {
  Statevector s(num_qubits);
  if (index >= s.dimension())
    throw std::invalid_argument("Statevector::basis_state: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

void Statevector::apply(const Gate &g) {
  for (int t : g.targets)
    if (t >= num_qubits_)
      throw std::invalid_argument("Statevector::apply: gate target outside register");
  apply_matrix(amps_, g.targets, g.local_matrix());
}

double Statevector::norm() const {
  double s = 0.0;
  for (const Complex &a : amps_)
    s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i)
    p[i] = std::norm(amps_[i]);
  return p;
}

// ---------------------------------------------------------------- density matrix

DensityMatrix::DensityMatrix(int num_qubits)
    : num_qubits_(num_qubits), dim_(checked_dimension(num_qubits, kMaxDensityQubits)),
      data_(dim_ * dim_) {
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_statevector(const Statevector &psi) {
  DensityMatrix rho(psi.num_qubits());
  for (std::size_t r = 0; r < rho.dim_; ++r)
    for (std::size_t c = 0; c < rho.dim_; ++c)
      rho.data_[r * rho.dim_ + c] = psi[r] * std::conj(psi[c]);
  return rho;
}

void DensityMatrix::apply(const Gate &g) {
  for (int t : g.targets)
    if (t >= num_qubits_)
      throw std::invalid_argument("DensityMatrix::apply: gate target outside register");
  // Row index occupies the high q bits, column index the low q bits.
  const ComplexMatrix u = g.local_matrix();
  std::vector<int> ket(g.targets), bra(g.targets);
  for (int &t : ket)
    t += num_qubits_;
  apply_matrix(data_, ket, u);
  apply_matrix(data_, bra, conjugate(u));
}

void DensityMatrix::depolarize(std::span<const int> qubits, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("depolarize: probability outside [0, 1]");
  if (p == 0.0 || qubits.empty())
    return;
  std::size_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits_)
      throw std::invalid_argument("depolarize: qubit out of range");
    mask |= std::size_t{1} << q;
  }
  const double weight = 1.0 / static_cast<double>(std::size_t{1} << qubits.size());
  std::vector<Complex> mixed(data_.size(), 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if ((r ^ c) & mask)
        continue;
      // Sum over all settings s of the masked bits (subset enumeration).
      Complex sum = 0.0;
      const std::size_t rb = r & ~mask, cb = c & ~mask;
      for (std::size_t s = mask;; s = (s - 1) & mask) {
        sum += data_[(rb | s) * dim_ + (cb | s)];
        if (s == 0)
          break;
      }
      mixed[r * dim_ + c] = weight * sum;
    }
  }
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] = (1.0 - p) * data_[i] + p * mixed[i];
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    t += data_[i * dim_ + i].real();
  return t;
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    p[i] = std::max(0.0, data_[i * dim_ + i].real());
  return p;
}

ComplexMatrix DensityMatrix::to_matrix() const {
  ComplexMatrix m(dim_, dim_);
  std::copy(data_.begin(), data_.end(), m.data().begin());
  return m;
}

double DensityMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      d = std::max(d, std::abs(data_[r * dim_ + c] - std::conj(data_[c * dim_ + r])));
  return d;
}

double DensityMatrix::min_eigenvalue() const {
  // Real symmetric embedding [[A, -B], [B, A]] of rho = A + iB; each
  // eigenvalue of rho appears twice.
  const std::size_t n = dim_;
  RealMatrix e(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Complex z = 0.5 * (data_[r * n + c] + std::conj(data_[c * n + r]));
      e(r, c) = e(r + n, c + n) = z.real();
      e(r + n, c) = z.imag();
      e(r, c + n) = -z.imag();
    }
  return symmetric_eigen(e).values.front();
}

Statevector apply_circuit(Statevector state, const Circuit &circuit) {
  if (state.num_qubits() != circuit.num_qubits())
    throw std::invalid_argument("apply_circuit: state and circuit qubit counts differ");
  for (const Gate &g : circuit.gates())
    state.apply(g);
  return state;
}

DensityMatrix apply_circuit(DensityMatrix state, const Circuit &circuit) {
  if (state.num_qubits() != circuit.num_qubits())
    throw std::invalid_argument("apply_circuit: state and circuit qubit counts differ");
  for (const Gate &g : circuit.gates())
    state.apply(g);
  return state;
}

// ---------------------------------------------------------------- Pauli algebra

double pauli_expectation(const Statevector &psi, const std::string &word) {
  if (static_cast<int>(word.size()) != psi.num_qubits())
    throw std::invalid_argument("pauli_expectation: word length differs from qubit count");
  const PauliMasks m = pauli_masks(word);
  Complex s = 0.0;
  for (std::size_t k = 0; k < psi.dimension(); ++k)
    s += std::conj(psi[k ^ m.flip]) * pauli_phase(m, k) * psi[k];
  return s.real();
}

double pauli_expectation(const DensityMatrix &rho, const std::string &word) {
  if (static_cast<int>(word.size()) != rho.num_qubits())
    throw std::invalid_argument("pauli_expectation: word length differs from qubit count");
  const PauliMasks m = pauli_masks(word);
  Complex s = 0.0;
  for (std::size_t k = 0; k < rho.dim_; ++k)
    s += rho.data_[k * rho.dim_ + (k ^ m.flip)] * pauli_phase(m, k);
  return s.real();
}

std::uint64_t pauli_support(const std::string &word) {
  const PauliMasks m = pauli_masks(word);
  return m.flip | m.phase;
}

Circuit basis_rotation(const std::string &word) {
  const int q = static_cast<int>(word.size());
  Circuit c(q);
  for (int pos = 0; pos < q; ++pos) {
    const int qubit = q - 1 - pos;
    if (word[static_cast<std::size_t>(pos)] == 'X') {
      c.h(qubit);
    } else if (word[static_cast<std::size_t>(pos)] == 'Y') {
      c.sdg(qubit);
      c.h(qubit);
    }
  }
  return c;
}

std::vector<PauliTerm> pauli_decompose(const RealMatrix &h) {
  if (!h.square() || h.rows() < 2 || !std::has_single_bit(h.rows()))
    throw std::invalid_argument("pauli_decompose: dimension must be a power of two >= 2");
  const std::size_t dim = h.rows();
  const int q = std::countr_zero(dim);
  static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliTerm> terms;
  const std::size_t num_words = std::size_t{1} << (2 * q);
  for (std::size_t code = 0; code < num_words; ++code) {
    std::string word(static_cast<std::size_t>(q), 'I');
    for (int qubit = 0; qubit < q; ++qubit)
      word[static_cast<std::size_t>(q - 1 - qubit)] = letters[(code >> (2 * qubit)) & 3U];
    const PauliMasks m = pauli_masks(word);
    Complex tr = 0.0;
    for (std::size_t k = 0; k < dim; ++k)
      tr += pauli_phase(m, k) * h(k ^ m.flip, k);
    const double c = tr.real() / static_cast<double>(dim);
    if (std::abs(c) >= 1e-14)
      terms.push_back({c, std::move(word)});
  }
  return terms;
}

ComplexMatrix pauli_sum_matrix(std::span<const PauliTerm> terms, int num_qubits) {
  const std::size_t dim = checked_dimension(num_qubits, kMaxStatevectorQubits);
  ComplexMatrix m(dim, dim);
  for (const PauliTerm &t : terms) {
    if (static_cast<int>(t.word.size()) != num_qubits)
      throw std::invalid_argument("pauli_sum_matrix: word length mismatch");
    const PauliMasks pm = pauli_masks(t.word);
    for (std::size_t k = 0; k < dim; ++k)
      m(k ^ pm.flip, k) += t.coefficient * pauli_phase(pm, k);
  }
  return m;
}

// ---------------------------------------------------------------- Hamiltonian helpers

double gershgorin_bound(const RealMatrix &h) {
  double bound = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < h.cols(); ++j)
      row += std::abs(h(i, j));
    bound = std::max(bound, row);
  }
  return bound;
}

PaddedHamiltonian pad_hamiltonian(const RealMatrix &h, double penalty) {
  if (!h.square() || h.rows() == 0)
    throw std::invalid_argument("pad_hamiltonian: H must be square and non-empty");
  const double bound = gershgorin_bound(h);
  if (!(penalty > bound))
    throw std::invalid_argument("pad_hamiltonian: penalty must exceed the Gershgorin bound " +
                                std::to_string(bound));
  const std::size_t n = h.rows();
  int q = 1;
  while ((std::size_t{1} << q) < n)
    ++q;
  const std::size_t dim = std::size_t{1} << q;
  PaddedHamiltonian out{RealMatrix(dim, dim), q, static_cast<int>(n), penalty};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.matrix(i, j) = h(i, j);
  for (std::size_t i = n; i < dim; ++i)
    out.matrix(i, i) = penalty;
  return out;
}

PaddedHamiltonian pad_hamiltonian(const RealMatrix &h) {
  const double bound = gershgorin_bound(h);
  return pad_hamiltonian(h, bound > 0.0 ? 2.0 * bound : 1.0);
}

ComplexMatrix matrix_exponential_unitary(const RealMatrix &h, double tau, PhaseWrap wrap) {
  if (!std::isfinite(tau))
    throw std::invalid_argument("matrix_exponential_unitary: tau must be finite");
  const EigenDecomposition eig = symmetric_eigen(h);
  double radius = 0.0;
  for (double l : eig.values)
    radius = std::max(radius, std::abs(l));
  if (wrap == PhaseWrap::reject && std::abs(tau) * radius >= 2.0 * std::numbers::pi)
    throw std::invalid_argument("matrix_exponential_unitary: tau * lambda_max >= 2 pi (phase aliasing)");
  const std::size_t n = h.rows();
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k)
    phases[k] = std::polar(1.0, tau * eig.values[k]);
  ComplexMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eig.vectors(i, k) * phases[k] * eig.vectors(j, k);
      u(i, j) = s;
    }
  return u;
}

double default_time_scale(const RealMatrix &h) {
  const double bound = gershgorin_bound(h);
  if (!(bound > 0.0))
    throw std::invalid_argument("default_time_scale: H has zero Gershgorin bound");
  return std::numbers::pi / bound;
}

// ---------------------------------------------------------------- sampling

std::string bitstring(std::size_t index, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q)
    if (index >> q & 1U)
      s[static_cast<std::size_t>(num_qubits - 1 - q)] = '1';
  return s;
}

std::vector<long> sample_outcome_counts(std::span<const double> probabilities, long shots,
                                        std::mt19937_64 &rng) {
  if (shots < 1)
    throw std::invalid_argument("sample_outcome_counts: shots must be >= 1");
  std::discrete_distribution<std::size_t> dist(probabilities.begin(), probabilities.end());
  std::vector<long> counts(probabilities.size(), 0);
  for (long s = 0; s < shots; ++s)
    ++counts[dist(rng)];
  return counts;
}

namespace {

Counts counts_from(std::span<const double> probs, int q, long shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<long> raw = sample_outcome_counts(probs, shots, rng);
  Counts out;
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (raw[i] > 0)
      out.emplace(bitstring(i, q), raw[i]);
  return out;
}

} // namespace

Counts sample_measurements(const Statevector &psi, long shots, std::uint64_t seed) {
  return counts_from(psi.probabilities(), psi.num_qubits(), shots, seed);
}

Counts sample_measurements(const DensityMatrix &rho, long shots, std::uint64_t seed) {
  return counts_from(rho.probabilities(), rho.num_qubits(), shots, seed);
}

} // namespace fpedss
