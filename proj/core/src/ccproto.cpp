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

#include "nlcc/ccproto.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlcc/fieldpoly.hpp"

namespace nlcc::ccproto {

namespace {

constexpr double kPi = 3.14159265358979323846;

int ceil_log2(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

void check_equal_length(const Bits& x, const Bits& y, const char* who) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(who) + ": input length mismatch");
  }
  if (x.empty()) throw std::invalid_argument(std::string(who) + ": empty input");
}

// (1/sqrt(n)) sum_i (-1)^{x_i} |i>.
StateVector phase_state(const Bits& x) {
  const int m = log2_exact(x.size());
  StateVector s = StateVector::uniform(m);
  return apply_phases(s, [&x](std::uint64_t i) {
    return x[static_cast<std::size_t>(i)] ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
  });
}

StateVector hadamard_all(const StateVector& s, int first, int count) {
  const Operator h = gates::hadamard();
  StateVector out = s;
  for (int q = first; q < first + count; ++q) out = apply(h, out, {q});
  return out;
}

}  // namespace

// ---- harness ----

nlohmann::json CostLedger::to_json() const {
  return nlohmann::json{{"classical_bits", classical_bits},
                        {"qubits", qubits},
                        {"ebits", ebits},
                        {"public_coin_bits", public_coin_bits},
                        {"nl_boxes", nl_boxes},
                        {"rounds", rounds}};
}

std::uint64_t Transcript::total_bits() const {
  std::uint64_t total = 0;
  for (const auto& m : messages)
    if (m.kind == PayloadKind::Bit) total += m.size;
  return total;
}

std::uint64_t Transcript::total_qubits() const {
  std::uint64_t total = 0;
  for (const auto& m : messages)
    if (m.kind == PayloadKind::Qubit) total += m.size;
  return total;
}

void ProtocolRun::append(Message msg) {
  if (msg.sender != last_sender_) {
    ++ledger.rounds;
    last_sender_ = msg.sender;
  }
  transcript.messages.push_back(std::move(msg));
}

void ProtocolRun::send_bits(const std::string& sender, const std::string& desc,
                            std::uint64_t count) {
  ledger.classical_bits += count;
  append(Message{sender, desc, count, PayloadKind::Bit});
}

void ProtocolRun::send_qubits(const std::string& sender, const std::string& desc,
                              std::uint64_t count) {
  ledger.qubits += count;
  append(Message{sender, desc, count, PayloadKind::Qubit});
}

// ---- equality ----

ProtocolResult eq_deterministic(const Bits& x, const Bits& y) {
  check_equal_length(x, y, "eq_deterministic");
  ProtocolRun run;
  run.send_bits("bob", "entire input string", y.size());
  const bool equal = (x == y);
  run.send_bits("alice", "answer bit", 1);
  ProtocolResult res;
  res.output = {{"equal", equal}};
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  res.correct = true;  // deterministic protocol is always right
  return res;
}

bool eq_public_coin_round(const Bits& x, const Bits& y, const Bits& r) {
  return inner_product_mod2(x, r) == inner_product_mod2(y, r);
}

ProtocolResult eq_public_coin(const Bits& x, const Bits& y, int reps, SeededRng& rng) {
  check_equal_length(x, y, "eq_public_coin");
  if (reps < 0) throw std::invalid_argument("eq_public_coin: reps must be >= 0");
  ProtocolRun run;
  bool all_matched = true;
  for (int k = 0; k < reps; ++k) {
    const Bits r = random_bits(static_cast<int>(x.size()), rng);
    run.use_public_coins(x.size());
    run.send_bits("alice", "x·r", 1);
    if (!eq_public_coin_round(x, y, r)) all_matched = false;
  }
  ProtocolResult res;
  res.output = {{"equal", all_matched}};
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  res.correct = (all_matched == (x == y));
  return res;
}

ProtocolResult eq_private_coin_poly_at(const Bits& x, const Bits& y, std::uint64_t a) {
  check_equal_length(x, y, "eq_private_coin_poly");
  const std::uint64_t p = fingerprint_modulus(static_cast<int>(x.size()));
  if (a >= p) throw std::invalid_argument("eq_private_coin_poly: point outside the field");
  const std::uint64_t px = poly_eval_bits(x, a, p);
  const std::uint64_t py = poly_eval_bits(y, a, p);
  ProtocolRun run;
  const std::uint64_t field_bits = static_cast<std::uint64_t>(ceil_log2(p));
  run.send_bits("alice", "(a, p_x(a))", 2 * field_bits);
  ProtocolResult res;
  res.output = {{"equal", px == py}, {"point", a}, {"modulus", p}};
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  res.correct = ((px == py) == (x == y));
  return res;
}

ProtocolResult eq_private_coin_poly(const Bits& x, const Bits& y, SeededRng& rng) {
  const std::uint64_t p = fingerprint_modulus(static_cast<int>(x.size()));
  return eq_private_coin_poly_at(x, y, rng.next_below(p));
}

// ---- distributed Deutsch-Jozsa ----

bool dj_promise_holds(const Bits& x, const Bits& y) {
  if (x.size() != y.size() || x.empty()) return false;
  if (!is_power_of_two(x.size())) return false;
  const int d = hamming_distance(x, y);
  return d == 0 || d == static_cast<int>(x.size()) / 2;
}

ProtocolResult dj_quantum(const Bits& x, const Bits& y) {
  check_equal_length(x, y, "dj_quantum");
  if (!is_power_of_two(x.size())) throw std::invalid_argument("dj_quantum: n must be a power of two");
  if (!dj_promise_holds(x, y)) {
    throw std::invalid_argument("dj_quantum: promise violated (inputs neither equal nor at distance n/2)");
  }
  const int m = log2_exact(x.size());
  ProtocolRun run;
  run.send_qubits("alice", "(1/sqrt n) sum (-1)^{x_i} |i>", static_cast<std::uint64_t>(m));

  StateVector s = phase_state(x);
  s = apply_phases(s, [&y](std::uint64_t i) {
    return y[static_cast<std::size_t>(i)] ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
  });
  s = hadamard_all(s, 0, m);
  const double p_zero = std::norm(s.amp(0));
  // On the promise, the |0..0> amplitude is exactly 1 (x = y) or 0, so the
  // output is deterministic.
  const bool output_equal = p_zero > 0.5;

  ProtocolResult res;
  res.output = {{"equal", output_equal}, {"p_all_zero", p_zero}};
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  res.correct = (output_equal == (x == y));
  return res;
}

double DjNonlocalResult::p_equal() const {
  double total = 0.0;
  const int n = 1 << m;
  for (int a = 0; a < n; ++a) total += p_at(a, a);
  return total;
}

DjNonlocalResult dj_nonlocal(const Bits& x, const Bits& y, SeededRng& rng) {
  check_equal_length(x, y, "dj_nonlocal");
  if (!is_power_of_two(x.size())) throw std::invalid_argument("dj_nonlocal: n must be a power of two");
  if (!dj_promise_holds(x, y)) {
    throw std::invalid_argument("dj_nonlocal: promise violated (inputs neither equal nor at distance n/2)");
  }
  const int m = log2_exact(x.size());
  const std::uint64_t n = x.size();

  // (1/sqrt n) sum |i>|i>, Alice's register in the high qubits.
  std::vector<Complex> amps(n * n, Complex{});
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::uint64_t i = 0; i < n; ++i) amps[(i << m) | i] = w;
  StateVector s = StateVector::from_amplitudes(std::move(amps));

  s = apply_phases(s, [&](std::uint64_t idx) {
    const std::uint64_t i = idx >> m;
    const std::uint64_t j = idx & (n - 1);
    const int sign = (x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(j)]) & 1;
    return sign ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
  });
  s = hadamard_all(s, 0, 2 * m);

  DjNonlocalResult res;
  res.m = m;
  res.ledger.ebits = static_cast<std::uint64_t>(m);
  res.joint.resize(n * n);
  for (std::uint64_t idx = 0; idx < n * n; ++idx) res.joint[idx] = std::norm(s.amp(idx));

  const double u = rng.next_double();
  double acc = 0.0;
  std::uint64_t chosen = n * n - 1;
  for (std::uint64_t idx = 0; idx < n * n; ++idx) {
    acc += res.joint[idx];
    if (u < acc) {
      chosen = idx;
      break;
    }
  }
  res.sampled_a = static_cast<int>(chosen >> m);
  res.sampled_b = static_cast<int>(chosen & (n - 1));
  return res;
}

// ---- Grover intersection ----

ProtocolResult intersection_grover(const Bits& x, const Bits& y, SeededRng& rng) {
  check_equal_length(x, y, "intersection_grover");
  if (!is_power_of_two(x.size())) {
    throw std::invalid_argument("intersection_grover: n must be a power of two");
  }
  const int m = log2_exact(x.size());
  const std::uint64_t n = x.size();
  ProtocolRun run;
  const Operator h = gates::hadamard();

  std::vector<int> index_qubits(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) index_qubits[static_cast<std::size_t>(q)] = q;
  // Qubit m is the tag Alice appends for the distributed oracle.
  const std::uint64_t tag_mask = 1;

  auto oracle = [&](StateVector s) {
    // Alice tags x_i, ships index+tag to Bob, Bob phases by x_i ∧ y_i,
    // ships back, Alice untags.
    auto tag = [&](std::uint64_t idx) {
      const std::uint64_t i = idx >> 1;
      return x[static_cast<std::size_t>(i)] ? idx ^ tag_mask : idx;
    };
    s = permute_basis(s, tag);
    run.send_qubits("alice", "tagged index register", static_cast<std::uint64_t>(m) + 1);
    s = apply_phases(s, [&](std::uint64_t idx) {
      const std::uint64_t i = idx >> 1;
      const std::uint64_t tagged = idx & tag_mask;
      return (tagged && y[static_cast<std::size_t>(i)]) ? Complex{-1.0, 0.0}
                                                        : Complex{1.0, 0.0};
    });
    run.send_qubits("bob", "phased register", static_cast<std::uint64_t>(m) + 1);
    return permute_basis(s, tag);
  };

  auto grover_iterate = [&](StateVector s) {
    s = oracle(std::move(s));
    for (int q = 0; q < m; ++q) s = apply(h, s, {q});
    s = apply_phases(s, [&](std::uint64_t idx) {
      return (idx >> 1) == 0 ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
    });
    for (int q = 0; q < m; ++q) s = apply(h, s, {q});
    return s;
  };

  // Geometric sweep over guessed solution counts 2^j; each candidate is
  // verified classically, so false positives never escape.
  const int max_attempts = std::max(1, 3 * m);
  int attempts = 0;
  std::optional<int> found;
  while (attempts < max_attempts && !found) {
    for (int j = 0; j <= m && attempts < max_attempts; ++j, ++attempts) {
      const double guess = static_cast<double>(std::uint64_t{1} << j);
      const int iterations = static_cast<int>(
          std::ceil(kPi / 4.0 * std::sqrt(static_cast<double>(n) / guess)));
      StateVector s = tensor(StateVector::uniform(m), StateVector::basis(1, 0));
      for (int it = 0; it < iterations; ++it) s = grover_iterate(std::move(s));

      auto dist = measure(s, ProjectiveMeasurement::computational(m), index_qubits);
      auto [label, post] = sample(dist, rng);
      const int candidate = label;
      run.send_bits("alice", "x bit of candidate", 1);
      run.send_bits("bob", "y bit of candidate", 1);
      if (x[static_cast<std::size_t>(candidate)] && y[static_cast<std::size_t>(candidate)]) {
        found = candidate;
        break;
      }
    }
  }

  ProtocolResult res;
  res.output = {{"found", found.has_value()}};
  if (found) res.output["index"] = *found;
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) any = any || (x[i] && y[i]);
  res.correct = found.has_value() == any;  // verified candidates are never wrong
  return res;
}

// ---- hidden matching ----

void MatchingSpec::validate() const {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("matching: n must be positive and even");
  if (static_cast<int>(pairs.size()) != n / 2) {
    throw std::invalid_argument("matching: expected n/2 pairs");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& [i, j] : pairs) {
    if (i < 1 || i > n || j < 1 || j > n || i == j) {
      throw std::invalid_argument("matching: endpoint out of range");
    }
    if (seen[static_cast<std::size_t>(i - 1)] || seen[static_cast<std::size_t>(j - 1)]) {
      throw std::invalid_argument("matching: index covered twice");
    }
    seen[static_cast<std::size_t>(i - 1)] = true;
    seen[static_cast<std::size_t>(j - 1)] = true;
  }
}

MatchingSpec MatchingSpec::adjacent(int n) {
  MatchingSpec m;
  m.n = n;
  for (int i = 1; i <= n; i += 2) m.pairs.emplace_back(i, i + 1);
  m.validate();
  return m;
}

MatchingSpec MatchingSpec::random(int n, SeededRng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  MatchingSpec m;
  m.n = n;
  for (int i = 0; i < n; i += 2) {
    m.pairs.emplace_back(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(i + 1)]);
  }
  m.validate();
  return m;
}

ProtocolResult hm_quantum(const Bits& x, const MatchingSpec& m, SeededRng& rng) {
  m.validate();
  if (static_cast<int>(x.size()) != m.n) throw std::invalid_argument("hm_quantum: |x| != n");
  if (!is_power_of_two(x.size())) throw std::invalid_argument("hm_quantum: n must be a power of two");
  const int mq = log2_exact(x.size());
  const int dim = m.n;
  ProtocolRun run;
  run.send_qubits("alice", "(1/sqrt n) sum (-1)^{x_i} |i>", static_cast<std::uint64_t>(mq));

  StateVector s = phase_state(x);
  std::vector<int> all_qubits(static_cast<std::size_t>(mq));
  for (int q = 0; q < mq; ++q) all_qubits[static_cast<std::size_t>(q)] = q;

  // Bob's matching measurement {P_ij = |i><i| + |j><j|}.
  ProjectiveMeasurement matching_meas;
  for (std::size_t k = 0; k < m.pairs.size(); ++k) {
    const int i = m.pairs[k].first - 1;
    const int j = m.pairs[k].second - 1;
    matching_meas.projectors.push_back(Operator::ket_bra(dim, i, i) +
                                       Operator::ket_bra(dim, j, j));
    matching_meas.outcome_labels.push_back(static_cast<int>(k));
  }
  auto dist = measure(s, matching_meas, all_qubits);
  auto [pair_idx, post] = sample(dist, rng);
  const int i = m.pairs[static_cast<std::size_t>(pair_idx)].first - 1;
  const int j = m.pairs[static_cast<std::size_t>(pair_idx)].second - 1;

  // Parity readout in the {(|i>±|j>)/sqrt 2} basis of the projected plane.
  Operator plus(dim), minus(dim);
  plus.at(i, i) = 0.5;
  plus.at(i, j) = 0.5;
  plus.at(j, i) = 0.5;
  plus.at(j, j) = 0.5;
  minus.at(i, i) = 0.5;
  minus.at(i, j) = -0.5;
  minus.at(j, i) = -0.5;
  minus.at(j, j) = 0.5;
  Operator rest = Operator::identity(dim) - plus - minus;
  ProjectiveMeasurement parity_meas;
  parity_meas.projectors = {plus, minus, rest};
  parity_meas.outcome_labels = {0, 1, 2};
  auto parity_dist = measure(post, parity_meas, all_qubits);
  auto [parity, post2] = sample(parity_dist, rng);
  if (parity == 2) throw std::logic_error("hm_quantum: projected state escaped the pair plane");

  ProtocolResult res;
  res.output = {{"i", i + 1}, {"j", j + 1}, {"parity", parity}};
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  res.correct = (parity == (x[static_cast<std::size_t>(i)] ^ x[static_cast<std::size_t>(j)]));
  return res;
}

double hm_quantum_correct_probability(const Bits& x, const MatchingSpec& m) {
  m.validate();
  if (static_cast<int>(x.size()) != m.n || !is_power_of_two(x.size())) {
    throw std::invalid_argument("hm_quantum_correct_probability: bad input length");
  }
  const int mq = log2_exact(x.size());
  const int dim = m.n;
  StateVector s = phase_state(x);
  std::vector<int> all_qubits(static_cast<std::size_t>(mq));
  for (int q = 0; q < mq; ++q) all_qubits[static_cast<std::size_t>(q)] = q;

  double correct = 0.0;
  for (const auto& [pi, pj] : m.pairs) {
    const int i = pi - 1;
    const int j = pj - 1;
    const Operator pij = Operator::ket_bra(dim, i, i) + Operator::ket_bra(dim, j, j);
    auto [proj, p2] = project(pij, s, all_qubits);
    if (p2 < 1e-30) continue;
    std::vector<Complex> renorm(proj.amplitudes().begin(), proj.amplitudes().end());
    const double inv = 1.0 / std::sqrt(p2);
    for (auto& amp : renorm) amp *= inv;
    const StateVector cond = StateVector::from_amplitudes(std::move(renorm));
    // Probability of reading the true parity in the ± basis of the plane.
    const int want = x[static_cast<std::size_t>(i)] ^ x[static_cast<std::size_t>(j)];
    const double sign = want ? -1.0 : 1.0;
    const Complex overlap =
        (cond.amp(static_cast<std::uint64_t>(i)) + sign * cond.amp(static_cast<std::uint64_t>(j))) /
        std::sqrt(2.0);
    correct += p2 * std::norm(overlap);
  }
  return correct;
}

HmNonlocalResult hm_nonlocal(const Bits& x, const MatchingSpec& m, SeededRng& rng) {
  m.validate();
  if (static_cast<int>(x.size()) != m.n) throw std::invalid_argument("hm_nonlocal: |x| != n");
  if (!is_power_of_two(x.size())) {
    throw std::invalid_argument("hm_nonlocal: n must be a power of two");
  }
  const int mq = log2_exact(x.size());
  const std::uint64_t n = x.size();

  std::vector<Complex> amps(n * n, Complex{});
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::uint64_t i = 0; i < n; ++i) amps[(i << mq) | i] = w;
  StateVector shared = StateVector::from_amplitudes(std::move(amps));
  shared = apply_phases(shared, [&](std::uint64_t idx) {
    const std::uint64_t i = idx >> mq;
    return x[static_cast<std::size_t>(i)] ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
  });

  std::vector<int> bob_qubits(static_cast<std::size_t>(mq));
  for (int q = 0; q < mq; ++q) bob_qubits[static_cast<std::size_t>(q)] = mq + q;

  HmNonlocalResult res;
  res.m = mq;
  res.matching = m;
  res.ledger.ebits = static_cast<std::uint64_t>(mq);
  res.joint.assign(m.pairs.size(), std::vector<double>(n * n, 0.0));

  std::vector<double> pair_prob(m.pairs.size(), 0.0);
  for (std::size_t k = 0; k < m.pairs.size(); ++k) {
    const int i = m.pairs[k].first - 1;
    const int j = m.pairs[k].second - 1;
    const Operator pij = Operator::ket_bra(m.n, i, i) + Operator::ket_bra(m.n, j, j);
    auto [proj, p2] = project(pij, shared, bob_qubits);
    pair_prob[k] = p2;
    if (p2 < 1e-30) continue;
    std::vector<Complex> renorm(proj.amplitudes().begin(), proj.amplitudes().end());
    const double inv = 1.0 / std::sqrt(p2);
    for (auto& a : renorm) a *= inv;
    StateVector cond = StateVector::from_amplitudes(std::move(renorm));
    cond = hadamard_all(cond, 0, 2 * mq);
    for (std::uint64_t idx = 0; idx < n * n; ++idx) {
      res.joint[k][idx] = p2 * std::norm(cond.amp(idx));
    }
  }

  // Sample (pair, k, l) from the exact joint distribution.
  const double u = rng.next_double();
  double acc = 0.0;
  res.sampled_pair = static_cast<int>(m.pairs.size()) - 1;
  res.sampled_k = 0;
  res.sampled_l = 0;
  bool chosen = false;
  for (std::size_t k = 0; k < m.pairs.size() && !chosen; ++k) {
    for (std::uint64_t idx = 0; idx < n * n && !chosen; ++idx) {
      acc += res.joint[k][idx];
      if (u < acc) {
        res.sampled_pair = static_cast<int>(k);
        res.sampled_k = static_cast<int>(idx >> mq);
        res.sampled_l = static_cast<int>(idx & (n - 1));
        chosen = true;
      }
    }
  }
  return res;
}

ProtocolResult hm_classical_oneway(const Bits& x, const MatchingSpec& m, int sample_size,
                                   SeededRng& rng) {
  m.validate();
  if (static_cast<int>(x.size()) != m.n) {
    throw std::invalid_argument("hm_classical_oneway: |x| != n");
  }
  if (sample_size < 0 || sample_size > m.n) {
    throw std::invalid_argument("hm_classical_oneway: sample_size out of range");
  }
  // Distinct random indices (partial Fisher-Yates).
  std::vector<int> idx(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < sample_size; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m.n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  std::vector<bool> sampled(static_cast<std::size_t>(m.n), false);
  for (int i = 0; i < sample_size; ++i) sampled[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = true;

  ProtocolRun run;
  const std::uint64_t index_bits = static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(m.n)));
  run.send_bits("alice", "(i, x_i) samples",
                static_cast<std::uint64_t>(sample_size) * (index_bits + 1));

  ProtocolResult res;
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  for (const auto& [pi, pj] : m.pairs) {
    if (sampled[static_cast<std::size_t>(pi - 1)] && sampled[static_cast<std::size_t>(pj - 1)]) {
      const int parity = x[static_cast<std::size_t>(pi - 1)] ^ x[static_cast<std::size_t>(pj - 1)];
      res.output = {{"success", true}, {"i", pi}, {"j", pj}, {"parity", parity}};
      res.correct = true;
      return res;
    }
  }
  res.output = {{"success", false}};
  res.correct = false;
  return res;
}

// ---- Raz's problem ----

void RazInstance::validate() const {
  if (m <= 0 || !is_power_of_two(static_cast<std::uint64_t>(m))) {
    throw std::invalid_argument("raz: m must be a power of two");
  }
  if (static_cast<int>(v.size()) != m || static_cast<int>(coord_subspace.size()) != m) {
    throw std::invalid_argument("raz: inconsistent dimensions");
  }
  double n2 = 0.0;
  for (double c : v) n2 += c * c;
  if (std::abs(std::sqrt(n2) - 1.0) > kContractTol) {
    throw std::invalid_argument("raz: v is not a unit vector");
  }
  if (u.dim() != m || !u.is_unitary()) throw std::invalid_argument("raz: U is not unitary");
  if (true_label != 0 && true_label != 1) throw std::invalid_argument("raz: bad label");
  // ||P_true U v||^2 >= 2/3.
  double overlap = 0.0;
  for (int r = 0; r < m; ++r) {
    if (coord_subspace[static_cast<std::size_t>(r)] != true_label) continue;
    Complex acc = 0.0;
    for (int c = 0; c < m; ++c) acc += u.at(r, c) * v[static_cast<std::size_t>(c)];
    overlap += std::norm(acc);
  }
  if (overlap < 2.0 / 3.0 - kContractTol) {
    throw std::invalid_argument("raz: instance violates the 2/3 promise");
  }
}

RazInstance raz_instance_gen(int m, double target_overlap, SeededRng& rng) {
  if (m <= 1 || !is_power_of_two(static_cast<std::uint64_t>(m))) {
    throw std::invalid_argument("raz_instance_gen: m must be a power of two > 1");
  }
  if (target_overlap < 2.0 / 3.0 || target_overlap > 1.0) {
    throw std::invalid_argument("raz_instance_gen: target_overlap must lie in [2/3, 1]");
  }
  RazInstance inst;
  inst.m = m;

  // Random half split of the coordinates.
  inst.coord_subspace.assign(static_cast<std::size_t>(m), 0);
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < m / 2; ++i) inst.coord_subspace[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
  inst.true_label = rng.next_bit();

  // Random real orthogonal U via Gram-Schmidt on Gaussian columns.
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(m),
                                        std::vector<double>(static_cast<std::size_t>(m)));
  for (auto& col : cols) {
    for (auto& c : col) c = rng.next_gaussian();
  }
  for (int c = 0; c < m; ++c) {
    auto& col = cols[static_cast<std::size_t>(c)];
    for (int prev = 0; prev < c; ++prev) {
      const auto& p = cols[static_cast<std::size_t>(prev)];
      double overlap = 0.0;
      for (int i = 0; i < m; ++i) overlap += p[static_cast<std::size_t>(i)] * col[static_cast<std::size_t>(i)];
      for (int i = 0; i < m; ++i) col[static_cast<std::size_t>(i)] -= overlap * p[static_cast<std::size_t>(i)];
    }
    double n2 = 0.0;
    for (double vv : col) n2 += vv * vv;
    const double inv = 1.0 / std::sqrt(std::max(n2, 1e-300));
    for (auto& vv : col) vv *= inv;
  }
  inst.u = Operator(m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) inst.u.at(r, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];

  // w = sqrt(t)·w_in + sqrt(1-t)·w_out with unit vectors inside/outside the
  // labeled subspace, then v = U^T w so that ||P_label U v||^2 = t.
  std::vector<double> w_in(static_cast<std::size_t>(m), 0.0);
  std::vector<double> w_out(static_cast<std::size_t>(m), 0.0);
  double n_in = 0.0, n_out = 0.0;
  for (int i = 0; i < m; ++i) {
    const double g = rng.next_gaussian();
    if (inst.coord_subspace[static_cast<std::size_t>(i)] == inst.true_label) {
      w_in[static_cast<std::size_t>(i)] = g;
      n_in += g * g;
    } else {
      w_out[static_cast<std::size_t>(i)] = g;
      n_out += g * g;
    }
  }
  const double s_in = std::sqrt(target_overlap) / std::sqrt(std::max(n_in, 1e-300));
  const double s_out = std::sqrt(1.0 - target_overlap) / std::sqrt(std::max(n_out, 1e-300));
  std::vector<double> w(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    w[static_cast<std::size_t>(i)] = w_in[static_cast<std::size_t>(i)] * s_in +
                                     w_out[static_cast<std::size_t>(i)] * s_out;
  }
  inst.v.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int r = 0; r < m; ++r) {
      acc += inst.u.at(r, i).real() * w[static_cast<std::size_t>(r)];  // U^T w
    }
    inst.v[static_cast<std::size_t>(i)] = acc;
  }
  inst.exact_overlap = target_overlap;
  inst.validate();
  return inst;
}

ProtocolResult raz_quantum(const RazInstance& inst, SeededRng& rng) {
  inst.validate();
  const int mq = log2_exact(static_cast<std::uint64_t>(inst.m));
  ProtocolRun run;
  run.send_qubits("alice", "v as a log m qubit state", static_cast<std::uint64_t>(mq));

  std::vector<Complex> amps(inst.v.begin(), inst.v.end());
  StateVector s = StateVector::from_amplitudes(std::move(amps));
  std::vector<int> all_qubits(static_cast<std::size_t>(mq));
  for (int q = 0; q < mq; ++q) all_qubits[static_cast<std::size_t>(q)] = q;
  s = apply(inst.u, s, all_qubits);
  run.send_qubits("bob", "U v", static_cast<std::uint64_t>(mq));

  Operator p0(inst.m), p1(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    if (inst.coord_subspace[static_cast<std::size_t>(i)] == 0) {
      p0.at(i, i) = 1.0;
    } else {
      p1.at(i, i) = 1.0;
    }
  }
  ProjectiveMeasurement meas;
  meas.projectors = {p0, p1};
  meas.outcome_labels = {0, 1};
  auto dist = measure(s, meas, all_qubits);
  auto [label, post] = sample(dist, rng);

  ProtocolResult res;
  res.output = {{"label", label},
                {"true_label", inst.true_label},
                {"p_true", dist.probability_of(inst.true_label)}};
  res.ledger = run.ledger;
  res.transcript = run.transcript;
  res.correct = (label == inst.true_label);
  return res;
}

// ---- inner-product state transfer ----

Bits ip_transfer_demo(const Bits& x, const Bits& y0) {
  if (x.size() != y0.size() || x.empty()) {
    throw std::invalid_argument("ip_transfer_demo: inputs must be equal-length and nonempty");
  }
  const int n = static_cast<int>(x.size());
  if (n > 10) throw std::invalid_argument("ip_transfer_demo: n must be <= 10");

  // Alice holds |x>; Bob holds H^{⊗n}|y0>, the y0-signed uniform superposition.
  StateVector bob = StateVector::basis(n, bits_to_index(y0));
  bob = hadamard_all(bob, 0, n);
  StateVector s = tensor(StateVector::basis(n, bits_to_index(x)), bob);

  // |x>|y> -> (-1)^{x·y} |x>|y>.
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  s = apply_phases(s, [&](std::uint64_t idx) {
    const std::uint64_t xi = idx >> n;
    const std::uint64_t yi = idx & mask;
    int parity = 0;
    std::uint64_t common = xi & yi;
    while (common) {
      parity ^= 1;
      common &= common - 1;
    }
    return parity ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
  });

  // Hadamards on Bob's register leave him holding |x ⊕ y0| deterministically.
  s = hadamard_all(s, n, n);
  std::uint64_t bob_value = 0;
  double best = -1.0;
  for (std::uint64_t idx = 0; idx < s.dim(); ++idx) {
    const double p = std::norm(s.amp(idx));
    if (p > best) {
      best = p;
      bob_value = idx & mask;
    }
  }
  if (best < 1.0 - kContractTol) {
    throw std::logic_error("ip_transfer_demo: recovery amplitude not deterministic");
  }
  const std::uint64_t recovered = bob_value ^ bits_to_index(y0);
  return bits_from_index(recovered, n);
}

}  // namespace nlcc::ccproto
