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

#ifndef NLCC_CCPROTO_HPP_
#define NLCC_CCPROTO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nlcc/bits.hpp"
#include "nlcc/qstate.hpp"
#include "nlcc/rng.hpp"

namespace nlcc::ccproto {

struct CostLedger {
  std::uint64_t classical_bits = 0;
  std::uint64_t qubits = 0;
  std::uint64_t ebits = 0;
  std::uint64_t public_coin_bits = 0;
  std::uint64_t nl_boxes = 0;
  std::uint64_t rounds = 0;
  nlohmann::json to_json() const;
};

enum class PayloadKind { Bit, Qubit };

struct Message {
  std::string sender;
  std::string description;
  std::uint64_t size = 0;
  PayloadKind kind = PayloadKind::Bit;
};

struct Transcript {
  std::vector<Message> messages;
  std::uint64_t total_bits() const;
  std::uint64_t total_qubits() const;
};

/// Run harness: every transcript append bumps exactly one ledger counter by
/// the message size; a round starts whenever the sender changes.
class ProtocolRun {
 public:
  void send_bits(const std::string& sender, const std::string& desc, std::uint64_t count);
  void send_qubits(const std::string& sender, const std::string& desc, std::uint64_t count);
  void use_ebits(std::uint64_t count) { ledger.ebits += count; }
  void use_public_coins(std::uint64_t count) { ledger.public_coin_bits += count; }
  void use_boxes(std::uint64_t count) { ledger.nl_boxes += count; }

  CostLedger ledger;
  Transcript transcript;

 private:
  void append(Message msg);
  std::string last_sender_;
};

struct ProtocolResult {
  nlohmann::json output;
  CostLedger ledger;
  Transcript transcript;
  std::optional<bool> correct;
};

// ---- equality protocols ----

/// Bob ships his whole string, Alice answers; n+1 bits.
ProtocolResult eq_deterministic(const Bits& x, const Bits& y);

/// One public-coin round: Alice sends x·r, Bob compares with y·r.
bool eq_public_coin_round(const Bits& x, const Bits& y, const Bits& r);
/// k rounds; accepts iff all rounds matched. Never errs on x = y; accepts
/// unequal strings with probability 2^-k.
ProtocolResult eq_public_coin(const Bits& x, const Bits& y, int reps, SeededRng& rng);

/// Deterministic core of the polynomial protocol at evaluation point a.
ProtocolResult eq_private_coin_poly_at(const Bits& x, const Bits& y, std::uint64_t a);
/// Alice sends (a, p_x(a)) for uniform a over the field of size
/// smallest-prime >= 3n.
ProtocolResult eq_private_coin_poly(const Bits& x, const Bits& y, SeededRng& rng);

// ---- distributed Deutsch-Jozsa ----

/// x = y or Hamming distance exactly n/2, n a power of two.
bool dj_promise_holds(const Bits& x, const Bits& y);

/// Exact evaluation of the log(n)-qubit protocol; output 1 iff x = y on
/// promise inputs.
ProtocolResult dj_quantum(const Bits& x, const Bits& y);

struct DjNonlocalResult {
  int m = 0;                  // log2 n
  std::vector<double> joint;  // P(a, b), index (a << m) | b
  int sampled_a = 0;
  int sampled_b = 0;
  CostLedger ledger;
  double p_at(int a, int b) const { return joint[(static_cast<std::size_t>(a) << m) | b]; }
  double p_equal() const;
};
/// Entanglement-only version: exact joint output distribution over (a, b).
DjNonlocalResult dj_nonlocal(const Bits& x, const Bits& y, SeededRng& rng);

// ---- Grover intersection ----

/// Distributed Grover search for an index with x_i = y_i = 1. Candidates are
/// classically verified, so a returned index is always a true intersection.
ProtocolResult intersection_grover(const Bits& x, const Bits& y, SeededRng& rng);

// ---- hidden matching ----

struct MatchingSpec {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // 1-based endpoints
  void validate() const;
  static MatchingSpec adjacent(int n);  // (1,2)(3,4)...
  static MatchingSpec random(int n, SeededRng& rng);
};

/// One-way quantum protocol; always outputs a correct triple (i, j, x_i^x_j),
/// 1-based pair drawn uniformly from the matching.
ProtocolResult hm_quantum(const Bits& x, const MatchingSpec& m, SeededRng& rng);

/// Exact probability that the quantum protocol outputs a correct triple
/// (sums the parity-readout distribution over the matching measurement).
double hm_quantum_correct_probability(const Bits& x, const MatchingSpec& m);

struct HmNonlocalResult {
  int m = 0;  // log2 n
  MatchingSpec matching;
  /// joint[pair_idx][(k << m) | l] = P(pair, k, l)
  std::vector<std::vector<double>> joint;
  int sampled_pair = 0;
  int sampled_k = 0;
  int sampled_l = 0;
  CostLedger ledger;
};
/// Entanglement-only version; on the support,
/// i·(k^l) + j·(k^l) = x_i + x_j (mod 2) with 0-based index bitstrings.
HmNonlocalResult hm_nonlocal(const Bits& x, const MatchingSpec& m, SeededRng& rng);

/// Birthday-style one-way classical protocol: Alice ships `sample_size`
/// distinct random (i, x_i) pairs; Bob answers if a matching pair is covered.
ProtocolResult hm_classical_oneway(const Bits& x, const MatchingSpec& m, int sample_size,
                                   SeededRng& rng);

// ---- Raz's problem ----

struct RazInstance {
  int m = 0;                       // dimension, power of two
  std::vector<double> v;           // unit vector
  std::vector<std::uint8_t> coord_subspace;  // 0 -> H0, 1 -> H1, per coordinate
  Operator u;                      // m x m real orthogonal
  int true_label = 0;
  double exact_overlap = 0.0;      // ||P_true U v||^2 as constructed
  void validate() const;
};

RazInstance raz_instance_gen(int m, double target_overlap, SeededRng& rng);

/// Two-round qubit protocol: send v, apply U, send back, measure {P0, P1}.
ProtocolResult raz_quantum(const RazInstance& inst, SeededRng& rng);

// ---- inner-product state transfer demo ----

/// Runs |x>|y> -> |x>(-1)^{x·y}|y> against Bob's seeded superposition
/// H⊗..⊗H|y0> and recovers x on Bob's side with certainty.
Bits ip_transfer_demo(const Bits& x, const Bits& y0);

}  // namespace nlcc::ccproto

#endif  // NLCC_CCPROTO_HPP_
