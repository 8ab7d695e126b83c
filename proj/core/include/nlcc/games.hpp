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

#ifndef NLCC_GAMES_HPP_
#define NLCC_GAMES_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlcc/qstate.hpp"
#include "nlcc/rational.hpp"
#include "nlcc/rng.hpp"

namespace nlcc::games {

/// A non-locality game: per-party alphabets, a promise on joint inputs, a win
/// predicate and an input distribution supported on the promise.
struct GameSpec {
  std::string name;
  int parties = 0;
  std::vector<int> input_sizes;   // per party
  std::vector<int> output_sizes;  // per party
  std::function<bool(std::span<const int>)> promise;
  std::function<bool(std::span<const int>, std::span<const int>)> win;

  struct InputWeight {
    std::vector<int> inputs;
    Rational weight;
  };
  std::vector<InputWeight> distribution;

  void validate() const;
};

/// Per party, a total map input -> output.
struct DeterministicStrategy {
  std::vector<std::vector<int>> outputs;  // [party][input]
};

/// Shared state plus per-input local measurements; outcome labels are the
/// produced outputs.
struct QuantumStrategy {
  StateVector shared_state;
  std::vector<std::vector<int>> party_qubits;                    // registers
  std::vector<std::vector<ProjectiveMeasurement>> measurements;  // [party][input]
};

struct GameReport {
  double win_probability = 0.0;
  std::optional<Rational> exact_value;  // populated for deterministic strategies
  struct PerInput {
    std::vector<int> inputs;
    double win_probability;
  };
  std::vector<PerInput> per_input;
  std::string strategy_description;
};

GameReport eval_exact(const GameSpec& g, const DeterministicStrategy& s);
GameReport eval_exact(const GameSpec& g, const QuantumStrategy& s);

/// Exhaustive optimum over deterministic strategies; ties resolved in favor of
/// the lexicographically smallest output-table encoding. Shared-randomness
/// strategies are mixtures of these, so the value also bounds them.
std::pair<Rational, DeterministicStrategy> best_classical(const GameSpec& g);

GameSpec ghz_game();
QuantumStrategy ghz_quantum();

GameSpec chsh_game();
QuantumStrategy chsh_quantum();

GameSpec magic_square_game();
QuantumStrategy magic_square_quantum();
/// The near-optimal classical play from the two almost-consistent matrices;
/// loses only at s = t = 3.
DeterministicStrategy magic_square_two_matrices();

/// Largest eigenvalue of M = (A0⊗B0 + A0⊗B1 + A1⊗B0 − A1⊗B1)/4 for ±1
/// observables; always at most 1/sqrt(2).
double tsirelson_check(const Operator& a0, const Operator& a1, const Operator& b0,
                       const Operator& b1);

/// Haar-ish random Hermitian operator with eigenvalues in {+1, -1}.
Operator random_pm1_observable(int dim, SeededRng& rng);

struct SampledRun {
  std::vector<int> inputs;
  std::vector<int> outputs;
  bool win = false;
};
/// Draws an input from the game distribution, then samples party outcomes
/// sequentially from the shared state.
SampledRun sample_run(const GameSpec& g, const QuantumStrategy& s, SeededRng& rng);

}  // namespace nlcc::games

#endif  // NLCC_GAMES_HPP_
