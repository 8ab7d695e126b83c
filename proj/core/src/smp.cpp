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

#include "nlcc/smp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlcc/fieldpoly.hpp"

namespace nlcc::smp {

namespace {

int ceil_log2(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

QuantumFingerprint quantum_fingerprint(const Bits& x) {
  if (x.empty()) throw std::invalid_argument("quantum_fingerprint: empty input");
  const std::uint64_t m = fingerprint_modulus(static_cast<int>(x.size()));
  const int width = ceil_log2(m);
  const std::uint64_t reg = std::uint64_t{1} << width;

  std::vector<Complex> amps(reg * reg, Complex{});
  const double w = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::uint64_t a = 0; a < m; ++a) {
    const std::uint64_t val = poly_eval_bits(x, a, m);
    amps[(a << width) | val] = w;
  }
  QuantumFingerprint fp;
  fp.state = StateVector::from_amplitudes(std::move(amps));
  fp.index_qubits = width;
  fp.value_qubits = width;
  fp.modulus = m;
  return fp;
}

Rational fingerprint_overlap(const Bits& x, const Bits& y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("fingerprint_overlap: inputs must be equal-length and nonempty");
  }
  const std::uint64_t m = fingerprint_modulus(static_cast<int>(x.size()));
  const int agree = poly_agreement_count(x, y, m);
  return Rational(BigInt(agree), BigInt(m));
}

double swap_test_one_probability(const StateVector& phi, const StateVector& psi) {
  if (phi.dim() != psi.dim()) {
    throw std::invalid_argument("swap_test: state dimensions differ");
  }
  const int q = phi.qubit_count();
  if (1 + 2 * q > kMaxQubits) {
    throw std::invalid_argument("swap_test: circuit exceeds the qubit cap");
  }
  const Operator h = gates::hadamard();
  const Operator cswap = gates::fredkin();

  StateVector s = tensor(tensor(StateVector::basis(1, 0), phi), psi);
  s = apply(h, s, {0});
  // Register swap = qubitwise Fredkin against the ancilla.
  for (int i = 0; i < q; ++i) {
    s = apply(cswap, s, {0, 1 + i, 1 + q + i});
  }
  s = apply(h, s, {0});

  // P(ancilla = 1), computed from the amplitudes directly.
  double p1 = 0.0;
  const std::uint64_t half = s.dim() >> 1;
  for (std::uint64_t idx = half; idx < s.dim(); ++idx) p1 += std::norm(s.amp(idx));
  return p1;
}

int swap_test(const StateVector& phi, const StateVector& psi, SeededRng& rng) {
  const double p1 = swap_test_one_probability(phi, psi);
  return rng.next_double() < p1 ? 1 : 0;
}

SmpQuantumProtocol prepare_smp_quantum(const Bits& x, const Bits& y) {
  if (x.size() != y.size()) throw std::invalid_argument("smp_quantum_eq: length mismatch");
  const QuantumFingerprint fx = quantum_fingerprint(x);
  const QuantumFingerprint fy = quantum_fingerprint(y);
  SmpQuantumProtocol proto;
  proto.qubits_per_rep = fx.total_qubits() + fy.total_qubits();
  proto.p_one_exact = swap_test_one_probability(fx.state, fy.state);
  return proto;
}

SmpQuantumDecision SmpQuantumProtocol::run(int reps, SeededRng& rng) const {
  if (reps < 1) throw std::invalid_argument("smp_quantum_eq: reps must be >= 1");
  SmpQuantumDecision d;
  d.reps = reps;
  d.p_one_exact = p_one_exact;
  d.equal = true;
  for (int r = 0; r < reps; ++r) {
    ++d.reps_run;
    d.ledger.qubits += static_cast<std::uint64_t>(qubits_per_rep);
    if (rng.next_double() < p_one_exact) {
      d.equal = false;
      break;
    }
  }
  return d;
}

SmpQuantumDecision smp_quantum_eq(const Bits& x, const Bits& y, int reps, SeededRng& rng) {
  return prepare_smp_quantum(x, y).run(reps, rng);
}

ClassicalFingerprint classical_fingerprint(const Bits& x, int k, SeededRng& rng) {
  const std::uint64_t m = fingerprint_modulus(static_cast<int>(x.size()));
  if (k < 1 || static_cast<std::uint64_t>(k) > m) {
    throw std::invalid_argument("classical_fingerprint: k out of range");
  }
  // k distinct points via partial Fisher-Yates over the field.
  std::vector<std::uint64_t> pts(m);
  for (std::uint64_t a = 0; a < m; ++a) pts[a] = a;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t j =
        static_cast<std::uint64_t>(i) + rng.next_below(m - static_cast<std::uint64_t>(i));
    std::swap(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
  }
  ClassicalFingerprint fp;
  fp.modulus = m;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t a = pts[static_cast<std::size_t>(i)];
    fp.points.emplace_back(a, poly_eval_bits(x, a, m));
  }
  return fp;
}

SmpClassicalDecision smp_classical_eq(const Bits& x, const Bits& y, int k, SeededRng& rng) {
  if (k < 1) throw std::invalid_argument("smp_classical_eq: k must be >= 1");
  if (x.size() != y.size()) throw std::invalid_argument("smp_classical_eq: length mismatch");
  const ClassicalFingerprint fa = classical_fingerprint(x, k, rng);
  const ClassicalFingerprint fb = classical_fingerprint(y, k, rng);

  SmpClassicalDecision d;
  const std::uint64_t field_bits = static_cast<std::uint64_t>(ceil_log2(fa.modulus));
  d.ledger.classical_bits = 2ull * 2ull * static_cast<std::uint64_t>(k) * field_bits;

  bool all_agree = true;
  for (const auto& [a, pxa] : fa.points) {
    for (const auto& [b, pyb] : fb.points) {
      if (a != b) continue;
      d.had_common_point = true;
      if (pxa != pyb) all_agree = false;
    }
  }
  d.output_equal = d.had_common_point && all_agree;
  return d;
}

}  // namespace nlcc::smp
