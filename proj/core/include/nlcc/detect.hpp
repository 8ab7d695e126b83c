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

#ifndef NLCC_DETECT_HPP_
#define NLCC_DETECT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nlcc/bell.hpp"
#include "nlcc/rational.hpp"
#include "nlcc/rng.hpp"

namespace nlcc::detect {

/// Output value standing for "no click".
inline constexpr int kNoClick = -1;

/// Family of deterministic local responses indexed by a finite hidden
/// variable; responses may be the no-click symbol.
struct LHVModel {
  std::vector<double> weights;  // hidden-variable distribution
  /// responses[party][hidden][input] -> output in [0, outputs) or kNoClick
  std::vector<std::vector<std::vector<int>>> responses;
  int alice_inputs = 0, bob_inputs = 0;
  int alice_outputs = 0, bob_outputs = 0;
  void validate() const;

  /// P(alice clicks | x) under the hidden-variable distribution.
  double alice_click_probability(int x) const;
  double bob_click_probability(int y) const;
};

/// Catalog of the 2^c deterministic conversations of a protocol: per
/// transcript and per input, the party's output when the transcript is
/// consistent with that input, kNoClick otherwise.
struct ConversationCatalog {
  int bits = 0;
  std::vector<std::vector<int>> alice;  // [transcript][x]
  std::vector<std::vector<int>> bob;    // [transcript][y]
  void validate() const;

  /// Catalog of the one-way protocol in which Alice announces her whole
  /// input (c = n bits) and both parties then output deterministically.
  static ConversationCatalog one_way_full(
      int n_inputs_alice, int n_inputs_bob,
      const std::function<int(int)>& alice_output,
      const std::function<int(int, int)>& bob_output);
};

/// Hidden variable uniform over the 2^c transcripts; a party clicks exactly
/// when the transcript is consistent with its input. Joint click probability
/// is at least 2^-c on every input pair.
LHVModel protocol_to_lhv(const ConversationCatalog& catalog, int alice_outputs,
                         int bob_outputs);

struct EfficiencyReport {
  std::vector<double> alice_click;               // per x
  std::vector<double> bob_click;                 // per y
  std::vector<std::vector<double>> joint_click;  // per (x, y)
  bell::CorrelationTable conditional;            // given both clicked
  double tv_distance_to_target = 0.0;  // max_xy sum_ab |cond - target|
};
/// Exact enumeration over the hidden variable.
EfficiencyReport lhv_efficiency_report(const LHVModel& model,
                                       const bell::CorrelationTable& target);

/// Exact conditional table of an LHV model (both parties clicking).
bell::CorrelationTable lhv_conditional_table(const LHVModel& model);

/// Error of an Alice-inefficient LHV against a target, normalized by her
/// click rate: max_xy sum_ab |P_LHV(ab|xy)/eta - P_target(ab|xy)|.
double lhv_conditional_error(const LHVModel& model, const bell::CorrelationTable& target);

struct AsymOneWayPlan {
  int k = 0;             // shared-randomness instances
  int message_bits = 0;  // ceil(log2 k)
  double failure_probability = 0.0;  // (1-eta)^k
  double error_bound = 0.0;          // eps + (1-eta)^k
};
/// k = ln(eps)/ln(1-eta) instances, index sent one-way; random fallback when
/// no instance clicks.
AsymOneWayPlan asym_lhv_to_oneway(double eta, double eps);

/// Monte Carlo total-variational error of the constructed one-way protocol
/// against the model's conditional table.
double asym_protocol_measured_error(const LHVModel& model, double eps,
                                    const bell::CorrelationTable& target, int trials,
                                    SeededRng& rng);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> weights;  // mixture over deterministic ⊥-strategies
  std::vector<double> farkas;   // separating certificate when infeasible
  double certificate_violation = 0.0;  // yᵀb with yᵀA <= 1e-9 per column
};

/// Can a mixture of deterministic local {0..out-1, ⊥} strategies produce
/// per-party click probabilities (eta_a, eta_b) independent of the inputs,
/// independent across parties, and the target table conditional on both
/// clicks? Floating simplex with 1e-9 pivots, feasibility tolerance 1e-7.
FeasibilityResult lhv_feasibility(const bell::CorrelationTable& target, double eta_a,
                                  double eta_b);

struct ExactFeasibilityResult {
  bool feasible = false;
  std::vector<Rational> weights;
  std::vector<Rational> farkas;
  Rational certificate_violation;
};
/// Exact-pivot rational path for rational targets and efficiencies.
ExactFeasibilityResult lhv_feasibility_exact(const bell::RationalTable& target,
                                             const Rational& eta_a, const Rational& eta_b);

/// Largest eta (symmetric detectors) at which the table stays LHV-feasible,
/// located by bisection to the given resolution.
double detection_threshold(const bell::CorrelationTable& target, double resolution);

}  // namespace nlcc::detect

#endif  // NLCC_DETECT_HPP_
