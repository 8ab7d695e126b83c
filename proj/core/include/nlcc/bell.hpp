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

#ifndef NLCC_BELL_HPP_
#define NLCC_BELL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nlcc/games.hpp"
#include "nlcc/qstate.hpp"
#include "nlcc/rational.hpp"
#include "nlcc/rng.hpp"

namespace nlcc::bell {

struct TableShape {
  int nx = 0, ny = 0, na = 0, nb = 0;
  std::size_t size() const {
    return static_cast<std::size_t>(nx) * ny * na * nb;
  }
  std::size_t index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b;
  }
  bool operator==(const TableShape&) const = default;
};

/// P(a,b|x,y), stored row-major in index order x, y, a, b.
struct CorrelationTable {
  TableShape shape;
  std::vector<double> p;

  static CorrelationTable zeros(TableShape shape);
  double& at(int x, int y, int a, int b) { return p[shape.index(x, y, a, b)]; }
  double at(int x, int y, int a, int b) const { return p[shape.index(x, y, a, b)]; }
  /// Positivity within -1e-12 and per-(x,y) normalization within 1e-9.
  void validate() const;
};

/// Same layout with exact entries; used for the PR-box grid checks.
struct RationalTable {
  TableShape shape;
  std::vector<Rational> p;
  Rational at(int x, int y, int a, int b) const { return p[shape.index(x, y, a, b)]; }
};

/// C(P) = sum c_abxy P(a,b|x,y).
struct BellExpression {
  TableShape shape;
  std::vector<double> c;
  double& at(int x, int y, int a, int b) { return c[shape.index(x, y, a, b)]; }
  double at(int x, int y, int a, int b) const { return c[shape.index(x, y, a, b)]; }
  static BellExpression chsh();
};

/// Signed weight matrix m_xy = w_xy (-1)^{f(x,y)} of an XOR game.
struct XorGame {
  int nx = 0, ny = 0;
  std::vector<double> m;
  double& at(int x, int y) { return m[static_cast<std::size_t>(x) * ny + y]; }
  double at(int x, int y) const { return m[static_cast<std::size_t>(x) * ny + y]; }
  static XorGame chsh();
};

BellExpression expression_from_xor(const XorGame& g);

double evaluate(const BellExpression& expr, const CorrelationTable& table);

/// Exact maximum over deterministic local response functions a(x), b(y).
double lhv_value(const BellExpression& expr);
/// Same maximum computed directly over sign assignments A_x, B_y in {±1}.
double lhv_value_xor(const XorGame& g);

/// sum |m_xy|; attained by the no-signalling table that hits the XOR
/// condition with probability 1.
double ns_value_xor(const XorGame& g);

struct QmValueResult {
  double value = 0.0;
  std::vector<std::vector<double>> alpha, beta;  // unit vectors per input
  int iterations = 0;                            // sweeps used by the best restart
  std::vector<double> restart_values;
  std::vector<double> sweep_trace;  // value after each sweep of the best restart
  bool converged = false;
};

/// Lower bound on the quantum XOR-game value via alternating closed-form
/// updates of the Tsirelson vectors. Monotone nondecreasing per sweep;
/// 8 seeded restarts, best kept.
QmValueResult qm_value_xor(const XorGame& g, int dim, int max_iters, double tol,
                           std::uint64_t seed);

struct NoSignallingReport {
  double alice_deviation = 0.0;
  double bob_deviation = 0.0;
  bool pass = false;
};
NoSignallingReport no_signalling_check(const CorrelationTable& table,
                                       double tol = kContractTol);

struct ExactNoSignallingReport {
  Rational alice_deviation, bob_deviation;
  bool pass = false;
};
ExactNoSignallingReport no_signalling_check_exact(const RationalTable& table);

/// Exact Born table <psi| Pi_a(x) ⊗ Pi_b(y) |psi> of a two-party strategy.
CorrelationTable correlation_from_quantum(const games::QuantumStrategy& strategy,
                                          const games::GameSpec& game);

}  // namespace nlcc::bell

#endif  // NLCC_BELL_HPP_
