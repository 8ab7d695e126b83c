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

#ifndef NLCC_LBTOOLS_HPP_
#define NLCC_LBTOOLS_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "nlcc/qstate.hpp"
#include "nlcc/rational.hpp"
#include "nlcc/rng.hpp"

namespace nlcc::lbtools {

/// 0/1 communication matrix of f over {0,1}^n x {0,1}^n.
struct CommMatrix {
  int n = 0;
  std::vector<std::uint8_t> m;  // row-major, 2^n x 2^n
  std::uint64_t side() const { return std::uint64_t{1} << n; }
  std::uint8_t at(std::uint64_t x, std::uint64_t y) const { return m[(x << n) | y]; }
};

CommMatrix comm_matrix(const std::function<int(std::uint64_t, std::uint64_t)>& f, int n);

int eq_predicate(std::uint64_t x, std::uint64_t y);
int ip_predicate(std::uint64_t x, std::uint64_t y);

/// Rank over the rationals (fraction-free Bareiss elimination on exact
/// integers). n <= 10.
std::uint64_t rank_exact(const CommMatrix& m);
/// Same for an arbitrary integer matrix (used for ±1 sign matrices).
std::uint64_t rank_exact_int(const std::vector<std::vector<long long>>& m);

/// Subsets of {0,1}^n packed into words.
struct Subset {
  int n = 0;
  std::vector<std::uint64_t> words;
  static Subset empty(int n);
  static Subset full(int n);
  static Subset random(int n, SeededRng& rng);
  static Subset of(int n, const std::vector<std::uint64_t>& members);
  bool contains(std::uint64_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void insert(std::uint64_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::uint64_t size() const;
};

struct Rectangle {
  Subset a;  // rows
  Subset b;  // columns
};

struct DiscrepancyResult {
  double value = 0.0;
  Rectangle witness;
  bool exact = false;
};

/// Exact max over all rectangles of |mu(R ∩ f^-1(1)) - mu(R ∩ f^-1(0))|;
/// enumerates row subsets, the optimal column side is closed-form. n <= 3.
DiscrepancyResult discrepancy_exact(const CommMatrix& f, const std::vector<double>& mu);

/// Certified lower bound on the discrepancy from random rectangles plus
/// greedy row flips.
DiscrepancyResult discrepancy_sampled(const CommMatrix& f, const std::vector<double>& mu,
                                      int samples, SeededRng& rng);

struct LindseyResult {
  double lhs = 0.0;  // |sum over A x B of (-1)^{a·b}|
  double rhs = 0.0;  // sqrt(|A| |B| 2^n)
  bool pass = false;
};
LindseyResult lindsey_check(const Subset& a, const Subset& b, int n);

struct NayakResult {
  double avg_success = 0.0;
  double bound = 0.0;  // d / 2^n
  bool pass = false;
};
/// Average recovery probability of 2^n encodings in dimension d against the
/// d/2^n ceiling. Encodings are density-like (Hermitian PSD, unit trace);
/// decoders positive and summing to I.
NayakResult nayak_check(const std::vector<Operator>& encodings,
                        const std::vector<Operator>& decoders, int d);

/// Random rank-1 density matrix.
Operator random_pure_density(int d, SeededRng& rng);
/// Random POVM with `outcomes` elements (Gram matrices whitened to sum to I).
std::vector<Operator> random_povm(int d, int outcomes, SeededRng& rng);

}  // namespace nlcc::lbtools

#endif  // NLCC_LBTOOLS_HPP_
