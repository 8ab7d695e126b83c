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

#ifndef NLCC_SMP_HPP_
#define NLCC_SMP_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "nlcc/bits.hpp"
#include "nlcc/ccproto.hpp"
#include "nlcc/qstate.hpp"
#include "nlcc/rational.hpp"
#include "nlcc/rng.hpp"

namespace nlcc::smp {

struct ClassicalFingerprint {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;  // (a, p_x(a))
  std::uint64_t modulus = 0;
};

/// |F_x> = (1/sqrt m) sum_a |a>|p_x(a)>, both registers padded to
/// ceil(log2 m) qubits.
struct QuantumFingerprint {
  StateVector state;
  int index_qubits = 0;
  int value_qubits = 0;
  std::uint64_t modulus = 0;
  int total_qubits() const { return index_qubits + value_qubits; }
};

QuantumFingerprint quantum_fingerprint(const Bits& x);

/// Exact <F_x|F_y> = |{a : p_x(a) = p_y(a)}| / m; at most (n-1)/m <= 1/3 for
/// unequal strings.
Rational fingerprint_overlap(const Bits& x, const Bits& y);

/// Exact probability that the Hadamard, controlled-SWAP, Hadamard circuit
/// measures 1 on the ancilla. Evaluated from the explicit circuit, not the
/// closed form.
double swap_test_one_probability(const StateVector& phi, const StateVector& psi);

/// One sampled SWAP-test outcome.
int swap_test(const StateVector& phi, const StateVector& psi, SeededRng& rng);

struct SmpQuantumDecision {
  bool equal = false;
  int reps = 0;
  int reps_run = 0;          // tests actually executed (stops at the first 1)
  double p_one_exact = 0.0;  // circuit-exact per-rep probability of outcome 1
  ccproto::CostLedger ledger;
};

/// Prepared referee session for one string pair. Fresh fingerprint copies are
/// identical states, so the per-rep SWAP-test distribution is evaluated once
/// from the explicit circuit and the repetitions are iid draws of it.
struct SmpQuantumProtocol {
  int qubits_per_rep = 0;    // both fingerprints shipped to the referee
  double p_one_exact = 0.0;  // circuit-exact probability of outcome 1
  SmpQuantumDecision run(int reps, SeededRng& rng) const;
};
SmpQuantumProtocol prepare_smp_quantum(const Bits& x, const Bits& y);

/// Referee declares "unequal" as soon as any of `reps` SWAP tests on fresh
/// fingerprint copies yields 1. One-sided: equal strings always pass.
SmpQuantumDecision smp_quantum_eq(const Bits& x, const Bits& y, int reps, SeededRng& rng);

struct SmpClassicalDecision {
  bool output_equal = false;
  bool had_common_point = false;
  ccproto::CostLedger ledger;
};
/// Both parties ship k distinct random evaluation points; the referee outputs
/// 1 iff a common point exists and the polynomials agree on every common
/// point, 0 otherwise (including the no-common-point branch).
SmpClassicalDecision smp_classical_eq(const Bits& x, const Bits& y, int k, SeededRng& rng);

ClassicalFingerprint classical_fingerprint(const Bits& x, int k, SeededRng& rng);

}  // namespace nlcc::smp

#endif  // NLCC_SMP_HPP_
