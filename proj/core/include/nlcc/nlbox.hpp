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

#ifndef NLCC_NLBOX_HPP_
#define NLCC_NLBOX_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nlcc/bell.hpp"
#include "nlcc/bits.hpp"
#include "nlcc/ccproto.hpp"
#include "nlcc/rational.hpp"
#include "nlcc/rng.hpp"

namespace nlcc::nlbox {

/// One-shot non-local box: uniform a with a^b = x∧y holding with probability
/// p. Querying a consumed box throws.
class PrBox {
 public:
  explicit PrBox(double p);
  std::pair<int, int> query(int x, int y, SeededRng& rng);
  double p() const { return p_; }
  bool consumed() const { return consumed_; }

 private:
  double p_;
  bool consumed_ = false;
};

std::pair<int, int> pr_box_query(PrBox& box, int x, int y, SeededRng& rng);

/// NOT/AND circuit over inputs x_1..x_n (wires 0..n-1) and y_1..y_n (wires
/// n..2n-1); gate g writes wire 2n+g. Gates reference earlier wires only.
struct BooleanCircuit {
  struct Gate {
    enum class Op { Not, And };
    Op op = Op::Not;
    int a = 0;
    int b = 0;  // unused for Not
  };
  int n = 0;
  std::vector<Gate> gates;
  int output_wire = 0;

  void validate() const;
  int wire_count() const { return 2 * n + static_cast<int>(gates.size()); }
  int and_count() const;

  /// JSON schema: {"n": 2, "gates": [{"op":"not","in":["x1"]},
  /// {"op":"and","in":["g1","y2"]}], "output": "g2"}; inputs are labeled
  /// x1..xn / y1..yn and gate k is "g<k+1>".
  static BooleanCircuit from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  static BooleanCircuit single_and();  // f = x1 ∧ y1
  static BooleanCircuit random(int n, int max_and_gates, SeededRng& rng);
};

/// Plain gate-by-gate evaluation (no shares, no boxes).
int eval_circuit(const BooleanCircuit& c, const Bits& x, const Bits& y);

/// Share-based evaluation with two box queries per AND gate and a single
/// final bit from Alice. At p = 1 the output always equals the circuit value.
/// `share_trace`, when given, receives the (alice, bob) shares per wire.
ccproto::ProtocolResult vandam_eval(const BooleanCircuit& c, const Bits& x, const Bits& y,
                                    double p, SeededRng& rng,
                                    std::vector<std::pair<int, int>>* share_trace = nullptr);

struct NoisySuccess {
  double rate = 0.0;
  int trials = 0;
  double sigma = 0.0;  // binomial stddev of the rate estimate
};
NoisySuccess noisy_vandam_success(const BooleanCircuit& c, double p, int trials, SeededRng& rng);

/// P = p/2 on parity-correct output pairs, (1-p)/2 otherwise.
bell::CorrelationTable pr_correlation_table(double p);
bell::RationalTable pr_correlation_table_exact(const Rational& p);

}  // namespace nlcc::nlbox

#endif  // NLCC_NLBOX_HPP_
