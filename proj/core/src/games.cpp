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

#include "nlcc/games.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nlcc::games {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_strategy_shape(const GameSpec& g, const DeterministicStrategy& s) {
  if (static_cast<int>(s.outputs.size()) != g.parties) {
    throw std::invalid_argument("strategy: party count mismatch");
  }
  for (int p = 0; p < g.parties; ++p) {
    if (static_cast<int>(s.outputs[p].size()) != g.input_sizes[p]) {
      throw std::invalid_argument("strategy: input alphabet mismatch");
    }
    for (int o : s.outputs[p]) {
      if (o < 0 || o >= g.output_sizes[p]) {
        throw std::invalid_argument("strategy: output out of alphabet");
      }
    }
  }
}

void check_strategy_shape(const GameSpec& g, const QuantumStrategy& s) {
  if (static_cast<int>(s.party_qubits.size()) != g.parties ||
      static_cast<int>(s.measurements.size()) != g.parties) {
    throw std::invalid_argument("quantum strategy: party count mismatch");
  }
  for (int p = 0; p < g.parties; ++p) {
    if (static_cast<int>(s.measurements[p].size()) != g.input_sizes[p]) {
      throw std::invalid_argument("quantum strategy: input alphabet mismatch");
    }
  }
}

// Joint outcome recursion: applies each party's projector for its outcome and
// accumulates win probability over the exact Born distribution.
void accumulate_outcomes(const GameSpec& g, const QuantumStrategy& s,
                         std::span<const int> inputs, int party, const StateVector& state,
                         double weight, std::vector<int>& outcomes, double& win_prob) {
  if (weight < 1e-30) return;
  if (party == g.parties) {
    if (g.win(inputs, outcomes)) win_prob += weight;
    return;
  }
  const auto& m = s.measurements[static_cast<std::size_t>(party)]
                                [static_cast<std::size_t>(inputs[static_cast<std::size_t>(party)])];
  const auto& regs = s.party_qubits[static_cast<std::size_t>(party)];
  for (std::size_t k = 0; k < m.projectors.size(); ++k) {
    auto [proj, p2] = project(m.projectors[k], state, regs);
    if (p2 < 1e-30) continue;
    std::vector<Complex> renorm(proj.amplitudes().begin(), proj.amplitudes().end());
    const double inv = 1.0 / std::sqrt(p2);
    for (auto& a : renorm) a *= inv;
    outcomes.push_back(m.outcome_labels[k]);
    accumulate_outcomes(g, s, inputs, party + 1, StateVector::from_amplitudes(std::move(renorm)),
                        weight * p2, outcomes, win_prob);
    outcomes.pop_back();
  }
}

Operator pauli_by_code(int code) {
  switch (code) {
    case 0: return gates::identity();
    case 1: return gates::pauli_x();
    case 2: return gates::pauli_y();
    default: return gates::pauli_z();
  }
}

}  // namespace

void GameSpec::validate() const {
  if (parties != 2 && parties != 3) throw std::invalid_argument("game: parties must be 2 or 3");
  Rational total = 0;
  for (const auto& iw : distribution) {
    if (static_cast<int>(iw.inputs.size()) != parties) {
      throw std::invalid_argument("game: input tuple arity mismatch");
    }
    if (!promise(iw.inputs)) {
      throw std::invalid_argument("game: distribution weight on promise-violating input");
    }
    if (iw.weight < 0) throw std::invalid_argument("game: negative input weight");
    total += iw.weight;
  }
  if (total != 1) throw std::invalid_argument("game: input distribution does not sum to 1");
}

GameReport eval_exact(const GameSpec& g, const DeterministicStrategy& s) {
  check_strategy_shape(g, s);
  GameReport report;
  Rational value = 0;
  std::vector<int> outputs(static_cast<std::size_t>(g.parties));
  for (const auto& iw : g.distribution) {
    for (int p = 0; p < g.parties; ++p) {
      outputs[static_cast<std::size_t>(p)] =
          s.outputs[static_cast<std::size_t>(p)][static_cast<std::size_t>(iw.inputs[static_cast<std::size_t>(p)])];
    }
    const bool win = g.win(iw.inputs, outputs);
    if (win) value += iw.weight;
    report.per_input.push_back({iw.inputs, win ? 1.0 : 0.0});
  }
  report.exact_value = value;
  report.win_probability = to_double(value);
  report.strategy_description = "deterministic";
  return report;
}

GameReport eval_exact(const GameSpec& g, const QuantumStrategy& s) {
  check_strategy_shape(g, s);
  GameReport report;
  double value = 0.0;
  for (const auto& iw : g.distribution) {
    double win_prob = 0.0;
    std::vector<int> outcomes;
    accumulate_outcomes(g, s, iw.inputs, 0, s.shared_state, 1.0, outcomes, win_prob);
    report.per_input.push_back({iw.inputs, win_prob});
    value += to_double(iw.weight) * win_prob;
  }
  report.win_probability = value;
  report.strategy_description = "quantum";
  return report;
}

std::pair<Rational, DeterministicStrategy> best_classical(const GameSpec& g) {
  // Strategy-space size check: prod over parties of |outputs|^|inputs|.
  double space = 1.0;
  for (int p = 0; p < g.parties; ++p) {
    space *= std::pow(static_cast<double>(g.output_sizes[static_cast<std::size_t>(p)]),
                      static_cast<double>(g.input_sizes[static_cast<std::size_t>(p)]));
  }
  if (space > 1e8) throw std::invalid_argument("best_classical: strategy space too large");

  // Rescale the distribution to integer numerators over a common denominator
  // so the search loop stays in integer arithmetic.
  BigInt common_den = 1;
  for (const auto& iw : g.distribution) {
    common_den = boost::multiprecision::lcm(common_den, boost::multiprecision::denominator(iw.weight));
  }
  std::vector<long long> weight_num;
  weight_num.reserve(g.distribution.size());
  for (const auto& iw : g.distribution) {
    const BigInt num =
        boost::multiprecision::numerator(iw.weight) *
        (common_den / boost::multiprecision::denominator(iw.weight));
    weight_num.push_back(num.convert_to<long long>());
  }

  // Precompute the win predicate per (input index, joint output).
  std::vector<std::vector<std::uint8_t>> win_table(g.distribution.size());
  std::vector<long long> out_stride(static_cast<std::size_t>(g.parties), 1);
  long long joint_outputs = 1;
  for (int p = g.parties - 1; p >= 0; --p) {
    out_stride[static_cast<std::size_t>(p)] = joint_outputs;
    joint_outputs *= g.output_sizes[static_cast<std::size_t>(p)];
  }
  {
    std::vector<int> outputs(static_cast<std::size_t>(g.parties));
    for (std::size_t ii = 0; ii < g.distribution.size(); ++ii) {
      win_table[ii].resize(static_cast<std::size_t>(joint_outputs));
      for (long long jo = 0; jo < joint_outputs; ++jo) {
        long long rest = jo;
        for (int p = 0; p < g.parties; ++p) {
          outputs[static_cast<std::size_t>(p)] =
              static_cast<int>(rest / out_stride[static_cast<std::size_t>(p)]);
          rest %= out_stride[static_cast<std::size_t>(p)];
        }
        win_table[ii][static_cast<std::size_t>(jo)] =
            g.win(g.distribution[ii].inputs, outputs) ? 1 : 0;
      }
    }
  }

  // Odometer over the concatenated output tables; earlier digits are more
  // significant, so the first maximum found is the lexicographically smallest.
  std::vector<int> digits;
  std::vector<int> digit_base;
  for (int p = 0; p < g.parties; ++p) {
    for (int i = 0; i < g.input_sizes[static_cast<std::size_t>(p)]; ++i) {
      digits.push_back(0);
      digit_base.push_back(g.output_sizes[static_cast<std::size_t>(p)]);
    }
  }
  std::vector<std::size_t> party_offset(static_cast<std::size_t>(g.parties), 0);
  for (int p = 1; p < g.parties; ++p) {
    party_offset[static_cast<std::size_t>(p)] =
        party_offset[static_cast<std::size_t>(p - 1)] +
        static_cast<std::size_t>(g.input_sizes[static_cast<std::size_t>(p - 1)]);
  }

  long long best = -1;
  std::vector<int> best_digits;
  while (true) {
    long long score = 0;
    for (std::size_t ii = 0; ii < g.distribution.size(); ++ii) {
      long long jo = 0;
      for (int p = 0; p < g.parties; ++p) {
        const int in = g.distribution[ii].inputs[static_cast<std::size_t>(p)];
        jo += out_stride[static_cast<std::size_t>(p)] *
              digits[party_offset[static_cast<std::size_t>(p)] + static_cast<std::size_t>(in)];
      }
      if (win_table[ii][static_cast<std::size_t>(jo)]) score += weight_num[ii];
    }
    if (score > best) {
      best = score;
      best_digits = digits;
    }
    // Advance the odometer (last digit fastest).
    int pos = static_cast<int>(digits.size()) - 1;
    while (pos >= 0) {
      if (++digits[static_cast<std::size_t>(pos)] < digit_base[static_cast<std::size_t>(pos)]) break;
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }

  DeterministicStrategy argmax;
  argmax.outputs.resize(static_cast<std::size_t>(g.parties));
  for (int p = 0; p < g.parties; ++p) {
    auto& table = argmax.outputs[static_cast<std::size_t>(p)];
    table.resize(static_cast<std::size_t>(g.input_sizes[static_cast<std::size_t>(p)]));
    for (int i = 0; i < g.input_sizes[static_cast<std::size_t>(p)]; ++i) {
      table[static_cast<std::size_t>(i)] =
          best_digits[party_offset[static_cast<std::size_t>(p)] + static_cast<std::size_t>(i)];
    }
  }
  return {Rational(BigInt(best), common_den), argmax};
}

// ---- GHZ ----

GameSpec ghz_game() {
  GameSpec g;
  g.name = "ghz";
  g.parties = 3;
  g.input_sizes = {2, 2, 2};
  g.output_sizes = {2, 2, 2};
  g.promise = [](std::span<const int> in) { return (in[0] ^ in[1] ^ in[2]) == 0; };
  g.win = [](std::span<const int> in, std::span<const int> out) {
    const int want = (in[0] == 0 && in[1] == 0 && in[2] == 0) ? 0 : 1;
    return ((out[0] ^ out[1] ^ out[2]) & 1) == want;
  };
  const Rational q = make_rational(1, 4);
  g.distribution = {{{0, 0, 0}, q}, {{0, 1, 1}, q}, {{1, 0, 1}, q}, {{1, 1, 0}, q}};
  g.validate();
  return g;
}

QuantumStrategy ghz_quantum() {
  QuantumStrategy s;
  const double half = 0.5;
  std::vector<Complex> amps(8, Complex{});
  amps[0b000] = half;
  amps[0b011] = -half;
  amps[0b101] = -half;
  amps[0b110] = -half;
  s.shared_state = StateVector::from_amplitudes(std::move(amps));
  s.party_qubits = {{0}, {1}, {2}};

  const Operator h = gates::hadamard();
  ProjectiveMeasurement comp = ProjectiveMeasurement::computational(1);
  ProjectiveMeasurement had;
  had.projectors = {h * Operator::ket_bra(2, 0, 0) * h, h * Operator::ket_bra(2, 1, 1) * h};
  had.outcome_labels = {0, 1};
  for (int p = 0; p < 3; ++p) s.measurements.push_back({comp, had});
  return s;
}

// ---- CHSH ----

GameSpec chsh_game() {
  GameSpec g;
  g.name = "chsh";
  g.parties = 2;
  g.input_sizes = {2, 2};
  g.output_sizes = {2, 2};
  g.promise = [](std::span<const int>) { return true; };
  g.win = [](std::span<const int> in, std::span<const int> out) {
    return ((out[0] ^ out[1]) & 1) == (in[0] & in[1]);
  };
  const Rational q = make_rational(1, 4);
  g.distribution = {{{0, 0}, q}, {{0, 1}, q}, {{1, 0}, q}, {{1, 1}, q}};
  g.validate();
  return g;
}

QuantumStrategy chsh_quantum() {
  QuantumStrategy s;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Complex> amps(4, Complex{});
  amps[0b00] = r;
  amps[0b11] = -r;
  s.shared_state = StateVector::from_amplitudes(std::move(amps));
  s.party_qubits = {{0}, {1}};

  // Rotate by theta then measure computationally; outcome |0> is bit 0.
  auto rotated = [](double theta) {
    const Operator rot = gates::rotation(theta);
    const Operator rot_dag = rot.adjoint();
    ProjectiveMeasurement m;
    m.projectors = {rot_dag * Operator::ket_bra(2, 0, 0) * rot,
                    rot_dag * Operator::ket_bra(2, 1, 1) * rot};
    m.outcome_labels = {0, 1};
    return m;
  };
  const ProjectiveMeasurement m0 = rotated(-kPi / 16.0);
  const ProjectiveMeasurement m1 = rotated(3.0 * kPi / 16.0);
  s.measurements = {{m0, m1}, {m0, m1}};
  return s;
}

// ---- magic square ----

namespace {

// Pauli codes for the observable table (1 = X, 2 = Y, 3 = Z); entry (s, t)
// is the tensor product first ⊗ second.
constexpr int kMsTable[3][3][2] = {
    {{1, 1}, {2, 3}, {3, 2}},
    {{2, 2}, {3, 1}, {1, 3}},
    {{3, 3}, {1, 2}, {2, 1}},
};

int bit_of(int value, int pos) { return (value >> (2 - pos)) & 1; }

}  // namespace

GameSpec magic_square_game() {
  GameSpec g;
  g.name = "magic-square";
  g.parties = 2;
  g.input_sizes = {3, 3};
  g.output_sizes = {8, 8};  // 3-bit outputs
  g.promise = [](std::span<const int>) { return true; };
  g.win = [](std::span<const int> in, std::span<const int> out) {
    const int s = in[0];
    const int t = in[1];
    const int a = out[0];
    const int b = out[1];
    const int a_par = bit_of(a, 0) ^ bit_of(a, 1) ^ bit_of(a, 2);
    const int b_par = bit_of(b, 0) ^ bit_of(b, 1) ^ bit_of(b, 2);
    if (a_par != 0 || b_par != 1) return false;
    return bit_of(a, t) == bit_of(b, s);
  };
  const Rational q = make_rational(1, 9);
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) g.distribution.push_back({{s, t}, q});
  g.validate();
  return g;
}

QuantumStrategy magic_square_quantum() {
  QuantumStrategy s;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Complex> singlet(4, Complex{});
  singlet[0b01] = r;
  singlet[0b10] = -r;
  const StateVector one = StateVector::from_amplitudes(singlet);
  s.shared_state = tensor(one, one);
  // Qubits: (0, 1) first singlet, (2, 3) second; Alice holds 0 and 2.
  s.party_qubits = {{0, 2}, {1, 3}};

  auto observable = [](int st, int which_row_col, bool alice) {
    // Alice, input s: row s entries (s, 0..2); Bob, input t: column t
    // entries (0..2, t).
    const int* codes = alice ? kMsTable[st][which_row_col] : kMsTable[which_row_col][st];
    return tensor(pauli_by_code(codes[0]), pauli_by_code(codes[1]));
  };
  for (int party = 0; party < 2; ++party) {
    std::vector<ProjectiveMeasurement> per_input;
    for (int input = 0; input < 3; ++input) {
      std::vector<Operator> obs;
      for (int k = 0; k < 3; ++k) obs.push_back(observable(input, k, party == 0));
      per_input.push_back(ProjectiveMeasurement::joint_eigenbasis(obs));
    }
    s.measurements.push_back(std::move(per_input));
  }
  return s;
}

DeterministicStrategy magic_square_two_matrices() {
  // Alice plays the rows of the first matrix, Bob the columns of the second.
  const int m1[3][3] = {{0, 0, 0}, {0, 0, 0}, {1, 1, 0}};
  const int m2[3][3] = {{0, 0, 0}, {0, 0, 0}, {1, 1, 1}};
  DeterministicStrategy s;
  s.outputs.resize(2);
  for (int row = 0; row < 3; ++row) {
    s.outputs[0].push_back(m1[row][0] << 2 | m1[row][1] << 1 | m1[row][2]);
  }
  for (int col = 0; col < 3; ++col) {
    s.outputs[1].push_back(m2[0][col] << 2 | m2[1][col] << 1 | m2[2][col]);
  }
  return s;
}

// ---- Tsirelson ----

double tsirelson_check(const Operator& a0, const Operator& a1, const Operator& b0,
                       const Operator& b1) {
  for (const Operator* o : {&a0, &a1, &b0, &b1}) {
    if (!o->is_plus_minus_one_observable()) {
      throw std::invalid_argument("tsirelson_check: inputs must be ±1-valued observables");
    }
  }
  const Operator m = (tensor(a0, b0) + tensor(a0, b1) + tensor(a1, b0) - tensor(a1, b1))
                         .scaled(0.25);
  return max_eigenvalue(m);
}

Operator random_pm1_observable(int dim, SeededRng& rng) {
  // Random unitary from Gram-Schmidt on complex Gaussian columns, then a
  // random ±1 spectrum.
  std::vector<std::vector<Complex>> cols(static_cast<std::size_t>(dim),
                                         std::vector<Complex>(static_cast<std::size_t>(dim)));
  for (auto& col : cols) {
    for (auto& v : col) v = Complex{rng.next_gaussian(), rng.next_gaussian()};
  }
  for (int c = 0; c < dim; ++c) {
    auto& col = cols[static_cast<std::size_t>(c)];
    for (int prev = 0; prev < c; ++prev) {
      const auto& p = cols[static_cast<std::size_t>(prev)];
      Complex overlap = 0.0;
      for (int i = 0; i < dim; ++i)
        overlap += std::conj(p[static_cast<std::size_t>(i)]) * col[static_cast<std::size_t>(i)];
      for (int i = 0; i < dim; ++i)
        col[static_cast<std::size_t>(i)] -= overlap * p[static_cast<std::size_t>(i)];
    }
    double n2 = 0.0;
    for (const auto& v : col) n2 += std::norm(v);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : col) v *= inv;
  }
  std::vector<int> signs(static_cast<std::size_t>(dim));
  for (auto& s : signs) s = rng.next_bit() ? -1 : 1;
  Operator o(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      Complex acc = 0.0;
      for (int k = 0; k < dim; ++k) {
        acc += cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] *
               static_cast<double>(signs[static_cast<std::size_t>(k)]) *
               std::conj(cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]);
      }
      o.at(r, c) = acc;
    }
  return o;
}

SampledRun sample_run(const GameSpec& g, const QuantumStrategy& s, SeededRng& rng) {
  check_strategy_shape(g, s);
  // Draw the input tuple.
  const double u = rng.next_double();
  double acc = 0.0;
  const GameSpec::InputWeight* chosen = &g.distribution.back();
  for (const auto& iw : g.distribution) {
    acc += to_double(iw.weight);
    if (u < acc) {
      chosen = &iw;
      break;
    }
  }
  SampledRun run;
  run.inputs = chosen->inputs;
  StateVector state = s.shared_state;
  for (int p = 0; p < g.parties; ++p) {
    const auto& m = s.measurements[static_cast<std::size_t>(p)]
                                  [static_cast<std::size_t>(run.inputs[static_cast<std::size_t>(p)])];
    auto dist = measure(state, m, s.party_qubits[static_cast<std::size_t>(p)]);
    auto [label, post] = sample(dist, rng);
    run.outputs.push_back(label);
    state = post;
  }
  run.win = g.win(run.inputs, run.outputs);
  return run;
}

}  // namespace nlcc::games
