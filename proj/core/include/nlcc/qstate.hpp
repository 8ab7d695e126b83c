// Copyright 2026 The nlcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLCC_QSTATE_HPP_
#define NLCC_QSTATE_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlcc/rng.hpp"

namespace nlcc {

using Complex = std::complex<double>;

/// Single knob for interface contracts (norms, probabilities, completeness).
inline constexpr double kContractTol = 1e-9;
/// Single knob for algebraic identities (H^2 = I and friends).
inline constexpr double kAlgebraTol = 1e-12;
/// Dense amplitude cap. The widest state in the suite is the SWAP-test
/// circuit on two n=8 fingerprints plus the ancilla (21 qubits).
inline constexpr int kMaxQubits = 24;

/// Dense complex square matrix. Row-major.
class Operator {
 public:
  Operator() = default;
  explicit Operator(int dim) : dim_(dim), m_(static_cast<std::size_t>(dim) * dim) {}

  static Operator identity(int dim);
  static Operator from_rows(const std::vector<std::vector<Complex>>& rows);
  /// |ket><bra| for basis indices.
  static Operator ket_bra(int dim, int ket, int bra);

  int dim() const { return dim_; }
  Complex& at(int r, int c) { return m_[static_cast<std::size_t>(r) * dim_ + c]; }
  const Complex& at(int r, int c) const { return m_[static_cast<std::size_t>(r) * dim_ + c]; }

  Operator adjoint() const;
  Operator operator*(const Operator& o) const;
  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator scaled(Complex f) const;

  double max_abs_diff(const Operator& o) const;
  bool is_hermitian(double tol = kContractTol) const;
  bool is_unitary(double tol = kContractTol) const;
  /// Hermitian with O^2 = I, i.e. eigenvalues in {+1, -1}.
  bool is_plus_minus_one_observable(double tol = kContractTol) const;
  Complex trace() const;

 private:
  int dim_ = 0;
  std::vector<Complex> m_;
};

/// Normalized amplitudes over 2^q computational basis states. Qubit 0 is the
/// most significant bit of the basis index, matching left-to-right ket
/// notation.
class StateVector {
 public:
  StateVector() = default;

  static StateVector basis(int qubit_count, std::uint64_t index);
  /// Checks power-of-two length, the qubit cap and normalization.
  static StateVector from_amplitudes(std::vector<Complex> amps);
  static StateVector uniform(int qubit_count);

  int qubit_count() const { return qubits_; }
  std::uint64_t dim() const { return amps_.size(); }
  Complex amp(std::uint64_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }
  double norm() const;

  friend StateVector tensor(const StateVector& a, const StateVector& b);
  friend StateVector apply(const Operator& u, const StateVector& s,
                           std::span<const int> targets);
  friend StateVector apply_phases(const StateVector& s,
                                  const std::function<Complex(std::uint64_t)>& phase);
  friend StateVector permute_basis(const StateVector& s,
                                   const std::function<std::uint64_t(std::uint64_t)>& perm);
  friend std::pair<StateVector, double> project(const Operator& p, const StateVector& s,
                                                std::span<const int> targets);

 private:
  std::vector<Complex> amps_;
  int qubits_ = 0;
};

/// Complete set of orthogonal projectors with one label per outcome.
struct ProjectiveMeasurement {
  std::vector<Operator> projectors;
  std::vector<int> outcome_labels;

  /// P^2 = P, P† = P per projector and sum P = I, all within tol.
  void validate(double tol = kContractTol) const;

  static ProjectiveMeasurement computational(int qubit_count);
  /// ±1-observable eigenprojectors; +1 eigenspace gets label 0, -1 gets 1.
  static ProjectiveMeasurement from_observable(const Operator& obs);
  /// Joint eigenspaces of pairwise commuting ±1 observables, refined left to
  /// right. Outcome label packs the per-observable bits MSB-first.
  static ProjectiveMeasurement joint_eigenbasis(const std::vector<Operator>& observables);
};

struct Outcome {
  int label = 0;
  double probability = 0.0;
  StateVector post_state;  // normalized when probability > 1e-12
};

struct OutcomeDistribution {
  std::vector<Outcome> entries;
  void validate(double tol = kContractTol) const;
  double probability_of(int label) const;
};

// ---- operations ----

/// Kronecker product; a's indices become the high-order bits.
StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);

/// Applies u to the ordered qubit subset `targets` (targets[0] is the
/// high-order bit of u's index space).
StateVector apply(const Operator& u, const StateVector& s, std::span<const int> targets);
StateVector apply(const Operator& u, const StateVector& s, std::initializer_list<int> targets);

/// Diagonal map amp[i] *= phase(i). Caller keeps |phase| = 1.
StateVector apply_phases(const StateVector& s,
                         const std::function<Complex(std::uint64_t)>& phase);

/// Basis permutation amp'[perm(i)] = amp[i]. perm must be a bijection.
StateVector permute_basis(const StateVector& s,
                          const std::function<std::uint64_t(std::uint64_t)>& perm);

/// Unnormalized projection of s by p embedded on targets, plus its squared
/// norm.
std::pair<StateVector, double> project(const Operator& p, const StateVector& s,
                                       std::span<const int> targets);

OutcomeDistribution measure(const StateVector& s, const ProjectiveMeasurement& m,
                            std::span<const int> targets);
OutcomeDistribution measure(const StateVector& s, const ProjectiveMeasurement& m,
                            std::initializer_list<int> targets);

/// Draws an outcome; probabilities in [-1e-12, 0) are clamped to 0 first.
std::pair<int, StateVector> sample(const OutcomeDistribution& d, SeededRng& rng);

/// Largest eigenvalue of a Hermitian operator. Exact diagonalization for
/// dim <= 64, shifted power iteration above.
double max_eigenvalue(const Operator& h);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

namespace gates {
Operator identity();
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator hadamard();
Operator rotation(double theta);  // [[cos, -sin], [sin, cos]]
Operator swap2();                 // two-qubit SWAP
Operator fredkin();               // controlled SWAP, control on the high qubit
}  // namespace gates

}  // namespace nlcc

#endif  // NLCC_QSTATE_HPP_
