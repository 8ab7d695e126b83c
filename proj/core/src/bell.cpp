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

#include "nlcc/bell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlcc::bell {

CorrelationTable CorrelationTable::zeros(TableShape shape) {
  CorrelationTable t;
  t.shape = shape;
  t.p.assign(shape.size(), 0.0);
  return t;
}

void CorrelationTable::validate() const {
  if (p.size() != shape.size()) throw std::invalid_argument("correlation table: shape mismatch");
  for (double v : p) {
    if (v < -kAlgebraTol) throw std::invalid_argument("correlation table: negative entry");
  }
  for (int x = 0; x < shape.nx; ++x) {
    for (int y = 0; y < shape.ny; ++y) {
      double total = 0.0;
      for (int a = 0; a < shape.na; ++a)
        for (int b = 0; b < shape.nb; ++b) total += at(x, y, a, b);
      if (std::abs(total - 1.0) > kContractTol) {
        throw std::invalid_argument("correlation table: row not normalized");
      }
    }
  }
}

BellExpression BellExpression::chsh() { return expression_from_xor(XorGame::chsh()); }

XorGame XorGame::chsh() {
  XorGame g;
  g.nx = 2;
  g.ny = 2;
  g.m.assign(4, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) g.at(x, y) = ((x & y) != 0) ? -1.0 : 1.0;
  return g;
}

BellExpression expression_from_xor(const XorGame& g) {
  BellExpression e;
  e.shape = TableShape{g.nx, g.ny, 2, 2};
  e.c.assign(e.shape.size(), 0.0);
  for (int x = 0; x < g.nx; ++x)
    for (int y = 0; y < g.ny; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          e.at(x, y, a, b) = g.at(x, y) * (((a ^ b) & 1) ? -1.0 : 1.0);
  return e;
}

double evaluate(const BellExpression& expr, const CorrelationTable& table) {
  if (!(expr.shape == table.shape)) throw std::invalid_argument("evaluate: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < expr.c.size(); ++i) acc += expr.c[i] * table.p[i];
  return acc;
}

double lhv_value(const BellExpression& expr) {
  const auto& sh = expr.shape;
  double a_space = std::pow(static_cast<double>(sh.na), sh.nx);
  double b_space = std::pow(static_cast<double>(sh.nb), sh.ny);
  if (a_space * b_space > 1e8) throw std::invalid_argument("lhv_value: search space too large");

  // For a fixed a(.), the best b(y) decouples per y, so only a(.) is
  // enumerated.
  std::vector<int> a_of(static_cast<std::size_t>(sh.nx), 0);
  double best = -1e300;
  while (true) {
    double total = 0.0;
    for (int y = 0; y < sh.ny; ++y) {
      double best_b = -1e300;
      for (int b = 0; b < sh.nb; ++b) {
        double v = 0.0;
        for (int x = 0; x < sh.nx; ++x) v += expr.at(x, y, a_of[static_cast<std::size_t>(x)], b);
        best_b = std::max(best_b, v);
      }
      total += best_b;
    }
    best = std::max(best, total);
    int pos = sh.nx - 1;
    while (pos >= 0) {
      if (++a_of[static_cast<std::size_t>(pos)] < sh.na) break;
      a_of[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return best;
}

double lhv_value_xor(const XorGame& g) {
  // Enumerate Alice's signs; Bob's optimal sign per y is closed-form.
  if (g.nx > 25) throw std::invalid_argument("lhv_value_xor: too many inputs");
  double best = -1e300;
  for (std::uint32_t mask = 0; mask < (1u << g.nx); ++mask) {
    double total = 0.0;
    for (int y = 0; y < g.ny; ++y) {
      double col = 0.0;
      for (int x = 0; x < g.nx; ++x) {
        const double ax = ((mask >> x) & 1u) ? -1.0 : 1.0;
        col += ax * g.at(x, y);
      }
      total += std::abs(col);
    }
    best = std::max(best, total);
  }
  return best;
}

double ns_value_xor(const XorGame& g) {
  double total = 0.0;
  for (double v : g.m) total += std::abs(v);
  return total;
}

namespace {

double seesaw_value(const XorGame& g, const std::vector<std::vector<double>>& alpha,
                    const std::vector<std::vector<double>>& beta) {
  double total = 0.0;
  for (int x = 0; x < g.nx; ++x) {
    for (int y = 0; y < g.ny; ++y) {
      double dot = 0.0;
      for (std::size_t d = 0; d < alpha[static_cast<std::size_t>(x)].size(); ++d) {
        dot += alpha[static_cast<std::size_t>(x)][d] * beta[static_cast<std::size_t>(y)][d];
      }
      total += g.at(x, y) * dot;
    }
  }
  return total;
}

// alpha(x) <- normalize(sum_y m_xy beta(y)); a degenerate sum keeps the
// previous vector.
void update_side(const XorGame& g, bool alice_side, std::vector<std::vector<double>>& target,
                 const std::vector<std::vector<double>>& other) {
  const int n = alice_side ? g.nx : g.ny;
  const int o = alice_side ? g.ny : g.nx;
  const std::size_t dim = target.front().size();
  for (int i = 0; i < n; ++i) {
    std::vector<double> acc(dim, 0.0);
    for (int j = 0; j < o; ++j) {
      const double w = alice_side ? g.at(i, j) : g.at(j, i);
      for (std::size_t d = 0; d < dim; ++d) acc[d] += w * other[static_cast<std::size_t>(j)][d];
    }
    double n2 = 0.0;
    for (double v : acc) n2 += v * v;
    if (n2 < 1e-28) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t d = 0; d < dim; ++d) target[static_cast<std::size_t>(i)][d] = acc[d] * inv;
  }
}

}  // namespace

QmValueResult qm_value_xor(const XorGame& g, int dim, int max_iters, double tol,
                           std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("qm_value_xor: dim must be >= 2");
  QmValueResult best;
  best.value = -1e300;
  const SeededRng master(seed);
  constexpr int kRestarts = 8;
  for (int restart = 0; restart < kRestarts; ++restart) {
    SeededRng rng = master.derive(0x5ee5aa, static_cast<std::uint64_t>(restart));
    auto random_units = [&](int count) {
      std::vector<std::vector<double>> vs(static_cast<std::size_t>(count),
                                          std::vector<double>(static_cast<std::size_t>(dim)));
      for (auto& v : vs) {
        double n2 = 0.0;
        for (auto& c : v) {
          c = rng.next_gaussian();
          n2 += c * c;
        }
        const double inv = 1.0 / std::sqrt(std::max(n2, 1e-300));
        for (auto& c : v) c *= inv;
      }
      return vs;
    };
    auto alpha = random_units(g.nx);
    auto beta = random_units(g.ny);
    double value = seesaw_value(g, alpha, beta);
    std::vector<double> trace;
    int iters = 0;
    bool converged = false;
    while (iters < max_iters) {
      ++iters;
      update_side(g, true, alpha, beta);
      update_side(g, false, beta, alpha);
      const double next = seesaw_value(g, alpha, beta);
      trace.push_back(next);
      if (next - value < tol) {
        value = std::max(value, next);
        converged = true;
        break;
      }
      value = next;
    }
    best.restart_values.push_back(value);
    if (value > best.value) {
      best.value = value;
      best.alpha = alpha;
      best.beta = beta;
      best.iterations = iters;
      best.converged = converged;
      best.sweep_trace = trace;
    }
  }
  return best;
}

NoSignallingReport no_signalling_check(const CorrelationTable& table, double tol) {
  table.validate();
  const auto& sh = table.shape;
  NoSignallingReport rep;
  for (int a = 0; a < sh.na; ++a) {
    for (int x = 0; x < sh.nx; ++x) {
      for (int y = 0; y < sh.ny; ++y) {
        for (int y2 = y + 1; y2 < sh.ny; ++y2) {
          double m1 = 0.0, m2 = 0.0;
          for (int b = 0; b < sh.nb; ++b) {
            m1 += table.at(x, y, a, b);
            m2 += table.at(x, y2, a, b);
          }
          rep.alice_deviation = std::max(rep.alice_deviation, std::abs(m1 - m2));
        }
      }
    }
  }
  for (int b = 0; b < sh.nb; ++b) {
    for (int y = 0; y < sh.ny; ++y) {
      for (int x = 0; x < sh.nx; ++x) {
        for (int x2 = x + 1; x2 < sh.nx; ++x2) {
          double m1 = 0.0, m2 = 0.0;
          for (int a = 0; a < sh.na; ++a) {
            m1 += table.at(x, y, a, b);
            m2 += table.at(x2, y, a, b);
          }
          rep.bob_deviation = std::max(rep.bob_deviation, std::abs(m1 - m2));
        }
      }
    }
  }
  rep.pass = rep.alice_deviation < tol && rep.bob_deviation < tol;
  return rep;
}

ExactNoSignallingReport no_signalling_check_exact(const RationalTable& table) {
  const auto& sh = table.shape;
  ExactNoSignallingReport rep;
  rep.alice_deviation = 0;
  rep.bob_deviation = 0;
  for (int a = 0; a < sh.na; ++a) {
    for (int x = 0; x < sh.nx; ++x) {
      for (int y = 0; y < sh.ny; ++y) {
        for (int y2 = y + 1; y2 < sh.ny; ++y2) {
          Rational m1 = 0, m2 = 0;
          for (int b = 0; b < sh.nb; ++b) {
            m1 += table.at(x, y, a, b);
            m2 += table.at(x, y2, a, b);
          }
          const Rational dev = m1 > m2 ? m1 - m2 : m2 - m1;
          if (dev > rep.alice_deviation) rep.alice_deviation = dev;
        }
      }
    }
  }
  for (int b = 0; b < sh.nb; ++b) {
    for (int y = 0; y < sh.ny; ++y) {
      for (int x = 0; x < sh.nx; ++x) {
        for (int x2 = x + 1; x2 < sh.nx; ++x2) {
          Rational m1 = 0, m2 = 0;
          for (int a = 0; a < sh.na; ++a) {
            m1 += table.at(x, y, a, b);
            m2 += table.at(x2, y, a, b);
          }
          const Rational dev = m1 > m2 ? m1 - m2 : m2 - m1;
          if (dev > rep.bob_deviation) rep.bob_deviation = dev;
        }
      }
    }
  }
  rep.pass = rep.alice_deviation == 0 && rep.bob_deviation == 0;
  return rep;
}

CorrelationTable correlation_from_quantum(const games::QuantumStrategy& strategy,
                                          const games::GameSpec& game) {
  if (game.parties != 2) {
    throw std::invalid_argument("correlation_from_quantum: two-party strategies only");
  }
  TableShape sh{game.input_sizes[0], game.input_sizes[1], game.output_sizes[0],
                game.output_sizes[1]};
  CorrelationTable table = CorrelationTable::zeros(sh);
  for (int x = 0; x < sh.nx; ++x) {
    const auto& ma = strategy.measurements[0][static_cast<std::size_t>(x)];
    for (int y = 0; y < sh.ny; ++y) {
      const auto& mb = strategy.measurements[1][static_cast<std::size_t>(y)];
      for (std::size_t ka = 0; ka < ma.projectors.size(); ++ka) {
        auto [sa, pa] = project(ma.projectors[ka], strategy.shared_state,
                                strategy.party_qubits[0]);
        if (pa < 1e-30) continue;
        for (std::size_t kb = 0; kb < mb.projectors.size(); ++kb) {
          auto [sab, pab] = project(mb.projectors[kb], sa, strategy.party_qubits[1]);
          table.at(x, y, ma.outcome_labels[ka], mb.outcome_labels[kb]) += pab;
        }
      }
    }
  }
  return table;
}

}  // namespace nlcc::bell
