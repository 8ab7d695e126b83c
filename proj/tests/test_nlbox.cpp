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

#include "nlcc/nlbox.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "nlcc/bell.hpp"

using namespace nlcc;
using namespace nlcc::nlbox;

namespace {

// Independent gate-by-gate evaluator used as the oracle against the share
// protocol.
int circuit_oracle(const BooleanCircuit& c, const Bits& x, const Bits& y) {
  std::vector<int> wires;
  for (auto b : x) wires.push_back(b);
  for (auto b : y) wires.push_back(b);
  for (const auto& g : c.gates) {
    if (g.op == BooleanCircuit::Gate::Op::Not) {
      wires.push_back(1 - wires[static_cast<std::size_t>(g.a)]);
    } else {
      wires.push_back(wires[static_cast<std::size_t>(g.a)] & wires[static_cast<std::size_t>(g.b)]);
    }
  }
  return wires[static_cast<std::size_t>(c.output_wire)];
}

}  // namespace

TEST(PrBox, PerfectBoxAlwaysSatisfiesTheParity) {
  SeededRng rng(41);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int t = 0; t < 50; ++t) {
        PrBox box(1.0);
        const auto [a, b] = box.query(x, y, rng);
        EXPECT_EQ(a ^ b, x & y);
      }
}

TEST(PrBox, SecondQueryThrows) {
  SeededRng rng(42);
  PrBox box(1.0);
  box.query(0, 0, rng);
  EXPECT_THROW(box.query(0, 0, rng), std::logic_error);
  EXPECT_THROW(PrBox(0.4), std::invalid_argument);
  EXPECT_THROW(PrBox(1.1), std::invalid_argument);
}

TEST(PrBox, AliceMarginalIsUniformPerInputPair) {
  SeededRng rng(43);
  const int trials = 20000;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      int ones = 0;
      for (int t = 0; t < trials; ++t) {
        PrBox box(1.0);
        ones += box.query(x, y, rng).first;
      }
      const double sigma = std::sqrt(0.25 / trials);
      EXPECT_NEAR(static_cast<double>(ones) / trials, 0.5, 4.0 * sigma);
    }
}

TEST(PrBox, NoisyParitySuccessTracksP) {
  SeededRng rng(44);
  const double p = 0.75;
  const int trials = 40000;
  int good = 0;
  for (int t = 0; t < trials; ++t) {
    PrBox box(p);
    const int x = rng.next_bit();
    const int y = rng.next_bit();
    const auto [a, b] = box.query(x, y, rng);
    good += ((a ^ b) == (x & y));
  }
  const double sigma = std::sqrt(p * (1.0 - p) / trials);
  EXPECT_NEAR(static_cast<double>(good) / trials, p, 4.0 * sigma);
}

TEST(Circuit, JsonRoundTripAndValidation) {
  const auto doc = nlohmann::json::parse(R"({
    "n": 2,
    "gates": [
      {"op": "not", "in": ["x1"]},
      {"op": "and", "in": ["g1", "y2"]}
    ],
    "output": "g2"
  })");
  const auto c = BooleanCircuit::from_json(doc);
  EXPECT_EQ(c.n, 2);
  EXPECT_EQ(c.and_count(), 1);
  const auto back = BooleanCircuit::from_json(c.to_json());
  EXPECT_EQ(back.output_wire, c.output_wire);

  // Forward references and unknown labels are rejected.
  EXPECT_THROW(BooleanCircuit::from_json(nlohmann::json::parse(
                   R"({"n":1,"gates":[{"op":"not","in":["g2"]}],"output":"g1"})")),
               std::invalid_argument);
  EXPECT_THROW(BooleanCircuit::from_json(nlohmann::json::parse(
                   R"({"n":1,"gates":[{"op":"not","in":["z1"]}],"output":"g1"})")),
               std::invalid_argument);
}

TEST(Vandam, SingleAndGateOnAllInputs) {
  // Hand-traced share algebra: exact output, two boxes, one bit.
  SeededRng rng(45);
  const auto c = BooleanCircuit::single_and();
  for (int xv = 0; xv < 2; ++xv)
    for (int yv = 0; yv < 2; ++yv) {
      const Bits x = {static_cast<std::uint8_t>(xv)};
      const Bits y = {static_cast<std::uint8_t>(yv)};
      const auto r = vandam_eval(c, x, y, 1.0, rng);
      EXPECT_EQ(r.output.at("value").get<int>(), xv & yv);
      EXPECT_EQ(r.ledger.nl_boxes, 2u);
      EXPECT_EQ(r.ledger.classical_bits, 1u);
    }
}

TEST(Vandam, NotOnlyCircuitNeedsNoBoxes) {
  BooleanCircuit c;
  c.n = 1;
  c.gates.push_back({BooleanCircuit::Gate::Op::Not, 0, 0});
  c.output_wire = 2;
  c.validate();
  SeededRng rng(46);
  for (int xv = 0; xv < 2; ++xv) {
    const auto r = vandam_eval(c, {static_cast<std::uint8_t>(xv)}, {0}, 1.0, rng);
    EXPECT_EQ(r.output.at("value").get<int>(), 1 - xv);
    EXPECT_EQ(r.ledger.nl_boxes, 0u);
    EXPECT_EQ(r.ledger.classical_bits, 1u);
  }
}

TEST(Vandam, FiftyRandomCircuitsExhaustivelyMatchTheOracle) {
  SeededRng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(6));
    const auto c = BooleanCircuit::random(n, 8, rng);
    for (int v = 0; v < (1 << (2 * n)); ++v) {
      Bits x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((v >> i) & 1);
        y[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((v >> (n + i)) & 1);
      }
      const auto r = vandam_eval(c, x, y, 1.0, rng);
      EXPECT_EQ(r.output.at("value").get<int>(), circuit_oracle(c, x, y));
      EXPECT_EQ(r.ledger.nl_boxes, 2u * static_cast<std::uint64_t>(c.and_count()));
      EXPECT_EQ(r.ledger.classical_bits, 1u);
    }
  }
}

TEST(Vandam, ShareSumsTrackTrueWireValuesAtPerfectBoxes) {
  SeededRng rng(48);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = BooleanCircuit::random(3, 5, rng);
    const Bits x = random_bits(3, rng);
    const Bits y = random_bits(3, rng);
    std::vector<std::pair<int, int>> shares;
    vandam_eval(c, x, y, 1.0, rng, &shares);
    // Recompute every wire with the oracle evaluator.
    std::vector<int> wires;
    for (auto b : x) wires.push_back(b);
    for (auto b : y) wires.push_back(b);
    for (const auto& g : c.gates) {
      wires.push_back(g.op == BooleanCircuit::Gate::Op::Not
                          ? 1 - wires[static_cast<std::size_t>(g.a)]
                          : (wires[static_cast<std::size_t>(g.a)] & wires[static_cast<std::size_t>(g.b)]));
    }
    ASSERT_EQ(shares.size(), wires.size());
    for (std::size_t w = 0; w < wires.size(); ++w) {
      EXPECT_EQ(shares[w].first ^ shares[w].second, wires[w]) << "wire " << w;
    }
  }
}

TEST(Vandam, PerfectBoxesGiveRateExactlyOne) {
  SeededRng rng(51);
  const auto stats = noisy_vandam_success(BooleanCircuit::single_and(), 1.0, 2000, rng);
  EXPECT_EQ(stats.rate, 1.0);
}

TEST(Vandam, NoisySingleAndMatchesTheClosedForm) {
  // Both boxes correct or both wrong leaves the parity intact:
  // success = p^2 + (1-p)^2, by enumerating the two error events.
  for (double p : {0.7, 0.85, 0.908}) {
    SeededRng rng(49);
    const auto stats = noisy_vandam_success(BooleanCircuit::single_and(), p, 40000, rng);
    const double closed = p * p + (1.0 - p) * (1.0 - p);
    EXPECT_NEAR(stats.rate, closed, 4.0 * std::sqrt(closed * (1.0 - closed) / stats.trials));
  }
}

TEST(Vandam, SuccessRateDoesNotImproveAsBoxesDegrade) {
  // Coupled seeds across the p grid; allow 4-sigma slack for sampling noise.
  const auto c = BooleanCircuit::single_and();
  const int trials = 20000;
  double prev = 1.1;
  for (double p : {1.0, 0.9, 0.8, 0.7, 0.6, 0.5}) {
    SeededRng rng(50);
    const auto stats = noisy_vandam_success(c, p, trials, rng);
    EXPECT_LE(stats.rate, prev + 4.0 * stats.sigma + 4.0 * std::sqrt(0.25 / trials));
    prev = stats.rate;
  }
}

TEST(PrTable, PerfectBoxTableIsTheCanonicalOne) {
  const auto t = pr_correlation_table(1.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double want = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
          EXPECT_EQ(t.at(x, y, a, b), want);
        }
}

TEST(PrTable, ExactNoSignallingAcrossTheGrid) {
  // p = 10/20 .. 20/20 in steps of 1/20: the marginal independence holds in
  // exact rational arithmetic.
  for (int num = 10; num <= 20; ++num) {
    const auto t = pr_correlation_table_exact(make_rational(num, 20));
    const auto rep = bell::no_signalling_check_exact(t);
    EXPECT_TRUE(rep.pass) << "p = " << num << "/20";
  }
}

TEST(PrTable, ChshValuesAtTheTwoReferencePoints) {
  const auto expr = bell::BellExpression::chsh();
  EXPECT_NEAR(bell::evaluate(expr, pr_correlation_table(1.0)), 4.0, kAlgebraTol);
  const double cos2 = 0.85355339059327376220;
  EXPECT_NEAR(bell::evaluate(expr, pr_correlation_table(cos2)), 2.0 * std::sqrt(2.0),
              kContractTol);
}

TEST(PrTable, FloatsPassTheFloatingNoSignallingCheck) {
  for (double p : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
    EXPECT_TRUE(bell::no_signalling_check(pr_correlation_table(p)).pass);
  }
}
