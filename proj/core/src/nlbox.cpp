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

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlcc::nlbox {

PrBox::PrBox(double p) : p_(p) {
  if (p < 0.5 || p > 1.0) throw std::invalid_argument("PrBox: p must lie in [1/2, 1]");
}

std::pair<int, int> PrBox::query(int x, int y, SeededRng& rng) {
  if (consumed_) throw std::logic_error("PrBox: box already consumed (one-shot device)");
  consumed_ = true;
  const int a = rng.next_bit();
  // b is flipped away from the parity-correct value with probability 1-p;
  // a stays uniform either way.
  int b = a ^ (x & y);
  if (p_ < 1.0 && rng.next_double() >= p_) b ^= 1;
  return {a, b};
}

std::pair<int, int> pr_box_query(PrBox& box, int x, int y, SeededRng& rng) {
  return box.query(x, y, rng);
}

// ---- circuits ----

void BooleanCircuit::validate() const {
  if (n < 1) throw std::invalid_argument("circuit: n must be >= 1");
  const int inputs = 2 * n;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const int self = inputs + static_cast<int>(g);
    const Gate& gate = gates[g];
    if (gate.a < 0 || gate.a >= self) {
      throw std::invalid_argument("circuit: gate references a later wire");
    }
    if (gate.op == Gate::Op::And && (gate.b < 0 || gate.b >= self)) {
      throw std::invalid_argument("circuit: gate references a later wire");
    }
  }
  if (output_wire < 0 || output_wire >= wire_count()) {
    throw std::invalid_argument("circuit: output wire out of range");
  }
}

int BooleanCircuit::and_count() const {
  int c = 0;
  for (const auto& g : gates) c += (g.op == Gate::Op::And);
  return c;
}

namespace {

int parse_wire_label(const std::string& label, int n, int gates_so_far) {
  if (label.size() < 2) throw std::invalid_argument("circuit: bad wire label '" + label + "'");
  const char kind = label.front();
  int idx = 0;
  try {
    idx = std::stoi(label.substr(1));
  } catch (const std::exception&) {
    throw std::invalid_argument("circuit: bad wire label '" + label + "'");
  }
  if (kind == 'x') {
    if (idx < 1 || idx > n) throw std::invalid_argument("circuit: x index out of range in '" + label + "'");
    return idx - 1;
  }
  if (kind == 'y') {
    if (idx < 1 || idx > n) throw std::invalid_argument("circuit: y index out of range in '" + label + "'");
    return n + idx - 1;
  }
  if (kind == 'g') {
    if (idx < 1 || idx > gates_so_far) {
      throw std::invalid_argument("circuit: gate reference '" + label + "' does not precede use");
    }
    return 2 * n + idx - 1;
  }
  throw std::invalid_argument("circuit: unknown wire label prefix in '" + label + "'");
}

std::string wire_label(int wire, int n) {
  if (wire < n) return "x" + std::to_string(wire + 1);
  if (wire < 2 * n) return "y" + std::to_string(wire - n + 1);
  return "g" + std::to_string(wire - 2 * n + 1);
}

}  // namespace

BooleanCircuit BooleanCircuit::from_json(const nlohmann::json& doc) {
  BooleanCircuit c;
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw std::invalid_argument("circuit: missing integer field 'n'");
  }
  c.n = doc["n"].get<int>();
  if (!doc.contains("gates") || !doc["gates"].is_array()) {
    throw std::invalid_argument("circuit: missing array field 'gates'");
  }
  int count = 0;
  for (const auto& g : doc["gates"]) {
    Gate gate;
    const std::string op = g.value("op", "");
    const auto& in = g.at("in");
    if (op == "not") {
      if (in.size() != 1) throw std::invalid_argument("circuit: 'not' takes one input");
      gate.op = Gate::Op::Not;
      gate.a = parse_wire_label(in[0].get<std::string>(), c.n, count);
    } else if (op == "and") {
      if (in.size() != 2) throw std::invalid_argument("circuit: 'and' takes two inputs");
      gate.op = Gate::Op::And;
      gate.a = parse_wire_label(in[0].get<std::string>(), c.n, count);
      gate.b = parse_wire_label(in[1].get<std::string>(), c.n, count);
    } else {
      throw std::invalid_argument("circuit: unknown op '" + op + "'");
    }
    c.gates.push_back(gate);
    ++count;
  }
  if (!doc.contains("output")) throw std::invalid_argument("circuit: missing field 'output'");
  c.output_wire = parse_wire_label(doc["output"].get<std::string>(), c.n, count);
  c.validate();
  return c;
}

nlohmann::json BooleanCircuit::to_json() const {
  nlohmann::json doc;
  doc["n"] = n;
  doc["gates"] = nlohmann::json::array();
  for (const auto& g : gates) {
    nlohmann::json jg;
    jg["op"] = g.op == Gate::Op::Not ? "not" : "and";
    jg["in"] = g.op == Gate::Op::Not
                   ? nlohmann::json::array({wire_label(g.a, n)})
                   : nlohmann::json::array({wire_label(g.a, n), wire_label(g.b, n)});
    doc["gates"].push_back(jg);
  }
  doc["output"] = wire_label(output_wire, n);
  return doc;
}

BooleanCircuit BooleanCircuit::single_and() {
  BooleanCircuit c;
  c.n = 1;
  c.gates.push_back({Gate::Op::And, 0, 1});
  c.output_wire = 2;
  c.validate();
  return c;
}

BooleanCircuit BooleanCircuit::random(int n, int max_and_gates, SeededRng& rng) {
  BooleanCircuit c;
  c.n = n;
  int and_gates = 0;
  const int total = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(2 * max_and_gates)));
  for (int g = 0; g < total; ++g) {
    const int avail = 2 * n + g;
    Gate gate;
    if (and_gates < max_and_gates && rng.next_bit()) {
      gate.op = Gate::Op::And;
      gate.a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(avail)));
      gate.b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(avail)));
      ++and_gates;
    } else {
      gate.op = Gate::Op::Not;
      gate.a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(avail)));
    }
    c.gates.push_back(gate);
  }
  c.output_wire = c.wire_count() - 1;
  c.validate();
  return c;
}

int eval_circuit(const BooleanCircuit& c, const Bits& x, const Bits& y) {
  c.validate();
  if (static_cast<int>(x.size()) != c.n || static_cast<int>(y.size()) != c.n) {
    throw std::invalid_argument("eval_circuit: input arity mismatch");
  }
  std::vector<int> w(static_cast<std::size_t>(c.wire_count()), 0);
  for (int i = 0; i < c.n; ++i) {
    w[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    w[static_cast<std::size_t>(c.n + i)] = y[static_cast<std::size_t>(i)];
  }
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const auto& gate = c.gates[g];
    const std::size_t self = static_cast<std::size_t>(2 * c.n) + g;
    w[self] = gate.op == BooleanCircuit::Gate::Op::Not
                  ? 1 - w[static_cast<std::size_t>(gate.a)]
                  : (w[static_cast<std::size_t>(gate.a)] & w[static_cast<std::size_t>(gate.b)]);
  }
  return w[static_cast<std::size_t>(c.output_wire)];
}

ccproto::ProtocolResult vandam_eval(const BooleanCircuit& c, const Bits& x, const Bits& y,
                                    double p, SeededRng& rng,
                                    std::vector<std::pair<int, int>>* share_trace) {
  c.validate();
  if (static_cast<int>(x.size()) != c.n || static_cast<int>(y.size()) != c.n) {
    throw std::invalid_argument("vandam_eval: input arity mismatch");
  }
  ccproto::ProtocolRun run;
  // Wire shares (alice, bob); inputs start as (x_i, 0) and (0, y_i).
  std::vector<std::pair<int, int>> shares(static_cast<std::size_t>(c.wire_count()));
  for (int i = 0; i < c.n; ++i) {
    shares[static_cast<std::size_t>(i)] = {x[static_cast<std::size_t>(i)], 0};
    shares[static_cast<std::size_t>(c.n + i)] = {0, y[static_cast<std::size_t>(i)]};
  }
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const auto& gate = c.gates[g];
    const std::size_t self = static_cast<std::size_t>(2 * c.n) + g;
    if (gate.op == BooleanCircuit::Gate::Op::Not) {
      // Alice negates her share; Bob does nothing.
      const auto [ap, app] = shares[static_cast<std::size_t>(gate.a)];
      shares[self] = {1 - ap, app};
      continue;
    }
    const auto [ap, app] = shares[static_cast<std::size_t>(gate.a)];
    const auto [bp, bpp] = shares[static_cast<std::size_t>(gate.b)];
    // Cross terms a'∧b'' and a''∧b' come from one box each; the first output
    // is always the Alice side.
    PrBox box1(p);
    const auto [d_alice, d_bob] = box1.query(ap, bpp, rng);
    PrBox box2(p);
    const auto [e_alice, e_bob] = box2.query(bp, app, rng);  // Alice feeds b', Bob feeds a''
    run.use_boxes(2);
    shares[self] = {(ap & bp) ^ d_alice ^ e_alice, (app & bpp) ^ d_bob ^ e_bob};
  }
  const auto [out_a, out_b] = shares[static_cast<std::size_t>(c.output_wire)];
  run.send_bits("alice", "her output share", 1);
  const int value = out_a ^ out_b;

  if (share_trace) *share_trace = shares;

  ccproto::ProtocolResult res;
  res.output = {{"value", value}};
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  res.correct = (value == eval_circuit(c, x, y));
  return res;
}

NoisySuccess noisy_vandam_success(const BooleanCircuit& c, double p, int trials, SeededRng& rng) {
  if (trials < 1) throw std::invalid_argument("noisy_vandam_success: trials must be >= 1");
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    SeededRng trial_rng = rng.derive(0xb0c5e5, static_cast<std::uint64_t>(t));
    Bits x(static_cast<std::size_t>(c.n)), y(static_cast<std::size_t>(c.n));
    for (auto& b : x) b = static_cast<std::uint8_t>(trial_rng.next_bit());
    for (auto& b : y) b = static_cast<std::uint8_t>(trial_rng.next_bit());
    const auto res = vandam_eval(c, x, y, p, trial_rng);
    if (res.correct.value_or(false)) ++hits;
  }
  NoisySuccess s;
  s.trials = trials;
  s.rate = static_cast<double>(hits) / trials;
  s.sigma = std::sqrt(std::max(s.rate * (1.0 - s.rate), 1e-12) / trials);
  return s;
}

bell::CorrelationTable pr_correlation_table(double p) {
  if (p < 0.5 || p > 1.0) throw std::invalid_argument("pr_correlation_table: p must lie in [1/2, 1]");
  bell::CorrelationTable t = bell::CorrelationTable::zeros({2, 2, 2, 2});
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const bool good = ((a ^ b) == (x & y));
          t.at(x, y, a, b) = good ? p / 2.0 : (1.0 - p) / 2.0;
        }
  return t;
}

bell::RationalTable pr_correlation_table_exact(const Rational& p) {
  if (p < make_rational(1, 2) || p > 1) {
    throw std::invalid_argument("pr_correlation_table_exact: p must lie in [1/2, 1]");
  }
  bell::RationalTable t;
  t.shape = {2, 2, 2, 2};
  t.p.assign(t.shape.size(), Rational(0));
  const Rational half(BigInt(1), BigInt(2));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const bool good = ((a ^ b) == (x & y));
          t.p[t.shape.index(x, y, a, b)] = good ? p * half : (Rational(1) - p) * half;
        }
  return t;
}

}  // namespace nlcc::nlbox
