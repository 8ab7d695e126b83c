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

#include "nlcc/lbtools.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace nlcc::lbtools {

CommMatrix comm_matrix(const std::function<int(std::uint64_t, std::uint64_t)>& f, int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("comm_matrix: n must lie in [1, 12]");
  CommMatrix cm;
  cm.n = n;
  const std::uint64_t side = cm.side();
  cm.m.resize(side * side);
  for (std::uint64_t x = 0; x < side; ++x)
    for (std::uint64_t y = 0; y < side; ++y)
      cm.m[(x << n) | y] = static_cast<std::uint8_t>(f(x, y) ? 1 : 0);
  return cm;
}

int eq_predicate(std::uint64_t x, std::uint64_t y) { return x == y ? 1 : 0; }

int ip_predicate(std::uint64_t x, std::uint64_t y) {
  return static_cast<int>(std::popcount(x & y) & 1u);
}

std::uint64_t rank_exact_int(const std::vector<std::vector<long long>>& m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  std::vector<std::vector<BigInt>> t(rows, std::vector<BigInt>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t[r][c] = m[r][c];

  // Fraction-free Bareiss: entries stay integers (minors of the input), so
  // the computation is exact over the rationals.
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && t[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(t[pivot], t[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        t[r][c] = (t[rank][col] * t[r][c] - t[r][col] * t[rank][c]) / prev;
      }
      t[r][col] = 0;
    }
    prev = t[rank][col];
    ++rank;
  }
  return rank;
}

std::uint64_t rank_exact(const CommMatrix& m) {
  if (m.n > 10) throw std::invalid_argument("rank_exact: n must be <= 10");
  const std::uint64_t side = m.side();
  std::vector<std::vector<long long>> rows(side, std::vector<long long>(side));
  for (std::uint64_t x = 0; x < side; ++x)
    for (std::uint64_t y = 0; y < side; ++y) rows[x][y] = m.at(x, y);
  return rank_exact_int(rows);
}

// ---- subsets and rectangles ----

Subset Subset::empty(int n) {
  Subset s;
  s.n = n;
  s.words.assign(((std::uint64_t{1} << n) + 63) / 64, 0);
  return s;
}

Subset Subset::full(int n) {
  Subset s = empty(n);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < count; ++i) s.insert(i);
  return s;
}

Subset Subset::random(int n, SeededRng& rng) {
  Subset s = empty(n);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (rng.next_bit()) s.insert(i);
  }
  return s;
}

Subset Subset::of(int n, const std::vector<std::uint64_t>& members) {
  Subset s = empty(n);
  for (auto i : members) s.insert(i);
  return s;
}

std::uint64_t Subset::size() const {
  std::uint64_t total = 0;
  for (auto w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

// ---- discrepancy ----

namespace {

// Given a fixed row set, the best column set takes either all positive or all
// negative signed column sums; returns (value, chosen columns).
std::pair<double, Subset> best_columns(const CommMatrix& f, const std::vector<double>& mu,
                                       const Subset& rows) {
  const std::uint64_t side = f.side();
  std::vector<double> col_sum(side, 0.0);
  for (std::uint64_t x = 0; x < side; ++x) {
    if (!rows.contains(x)) continue;
    for (std::uint64_t y = 0; y < side; ++y) {
      const double w = mu[(x << f.n) | y];
      col_sum[y] += f.at(x, y) ? w : -w;
    }
  }
  double pos = 0.0, neg = 0.0;
  for (double v : col_sum) {
    if (v > 0.0) pos += v;
    if (v < 0.0) neg -= v;
  }
  Subset cols = Subset::empty(f.n);
  const bool take_pos = pos >= neg;
  for (std::uint64_t y = 0; y < side; ++y) {
    if ((take_pos && col_sum[y] > 0.0) || (!take_pos && col_sum[y] < 0.0)) cols.insert(y);
  }
  return {std::max(pos, neg), cols};
}

void check_mu(const CommMatrix& f, const std::vector<double>& mu) {
  if (mu.size() != f.m.size()) throw std::invalid_argument("discrepancy: mu size mismatch");
}

}  // namespace

DiscrepancyResult discrepancy_exact(const CommMatrix& f, const std::vector<double>& mu) {
  if (f.n > 3) throw std::invalid_argument("discrepancy: exact mode requires n <= 3");
  check_mu(f, mu);
  const std::uint64_t side = f.side();
  DiscrepancyResult best;
  best.exact = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << side); ++mask) {
    Subset rows = Subset::empty(f.n);
    for (std::uint64_t x = 0; x < side; ++x) {
      if ((mask >> x) & 1) rows.insert(x);
    }
    auto [value, cols] = best_columns(f, mu, rows);
    if (value > best.value) {
      best.value = value;
      best.witness = Rectangle{rows, cols};
    }
  }
  return best;
}

DiscrepancyResult discrepancy_sampled(const CommMatrix& f, const std::vector<double>& mu,
                                      int samples, SeededRng& rng) {
  check_mu(f, mu);
  const std::uint64_t side = f.side();
  DiscrepancyResult best;
  best.exact = false;
  for (int s = 0; s < samples; ++s) {
    Subset rows = Subset::random(f.n, rng);
    auto [value, cols] = best_columns(f, mu, rows);
    // Greedy local search: flip single rows while it helps.
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::uint64_t x = 0; x < side; ++x) {
        Subset flipped = rows;
        if (flipped.contains(x)) {
          flipped.words[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
        } else {
          flipped.insert(x);
        }
        auto [fv, fc] = best_columns(f, mu, flipped);
        if (fv > value + 1e-15) {
          value = fv;
          cols = fc;
          rows = flipped;
          improved = true;
        }
      }
    }
    if (value > best.value) {
      best.value = value;
      best.witness = Rectangle{rows, cols};
    }
  }
  return best;
}

LindseyResult lindsey_check(const Subset& a, const Subset& b, int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("lindsey_check: n must lie in [1, 12]");
  const std::uint64_t side = std::uint64_t{1} << n;
  // t_b = sum_{a in A} (-1)^{a·b}; then lhs = |sum_{b in B} t_b|.
  std::vector<long long> t(side, 0);
  for (std::uint64_t x = 0; x < side; ++x) {
    if (!a.contains(x)) continue;
    for (std::uint64_t y = 0; y < side; ++y) {
      t[y] += (std::popcount(x & y) & 1u) ? -1 : 1;
    }
  }
  long long total = 0;
  for (std::uint64_t y = 0; y < side; ++y) {
    if (b.contains(y)) total += t[y];
  }
  LindseyResult res;
  res.lhs = std::abs(static_cast<double>(total));
  res.rhs = std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()) *
                      static_cast<double>(side));
  res.pass = res.lhs <= res.rhs + kContractTol;
  return res;
}

// ---- Nayak bound ----

namespace {

Eigen::MatrixXcd to_eigen(const Operator& o) {
  Eigen::MatrixXcd m(o.dim(), o.dim());
  for (int r = 0; r < o.dim(); ++r)
    for (int c = 0; c < o.dim(); ++c) m(r, c) = o.at(r, c);
  return m;
}

void check_positive(const Operator& o, const char* what) {
  if (!o.is_hermitian()) throw std::invalid_argument(std::string(what) + ": not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(o), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kContractTol) {
    throw std::invalid_argument(std::string(what) + ": not positive semidefinite");
  }
}

}  // namespace

NayakResult nayak_check(const std::vector<Operator>& encodings,
                        const std::vector<Operator>& decoders, int d) {
  if (encodings.empty() || encodings.size() != decoders.size()) {
    throw std::invalid_argument("nayak_check: need matching encodings and decoders");
  }
  Operator sum(d);
  for (const auto& rho : encodings) {
    if (rho.dim() != d) throw std::invalid_argument("nayak_check: encoding dimension mismatch");
    check_positive(rho, "encoding");
    if (std::abs(rho.trace().real() - 1.0) > kContractTol ||
        std::abs(rho.trace().imag()) > kContractTol) {
      throw std::invalid_argument("nayak_check: encoding trace is not 1");
    }
  }
  for (const auto& e : decoders) {
    if (e.dim() != d) throw std::invalid_argument("nayak_check: decoder dimension mismatch");
    check_positive(e, "decoder");
    sum = sum + e;
  }
  if (sum.max_abs_diff(Operator::identity(d)) > kContractTol) {
    throw std::invalid_argument("nayak_check: decoders do not sum to identity");
  }

  double avg = 0.0;
  for (std::size_t i = 0; i < encodings.size(); ++i) {
    avg += (decoders[i] * encodings[i]).trace().real();
  }
  avg /= static_cast<double>(encodings.size());

  NayakResult res;
  res.avg_success = avg;
  res.bound = static_cast<double>(d) / static_cast<double>(encodings.size());
  res.pass = avg <= res.bound + kContractTol;
  return res;
}

Operator random_pure_density(int d, SeededRng& rng) {
  std::vector<Complex> v(static_cast<std::size_t>(d));
  double n2 = 0.0;
  for (auto& c : v) {
    c = Complex{rng.next_gaussian(), rng.next_gaussian()};
    n2 += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(std::max(n2, 1e-300));
  Operator rho(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      rho.at(r, c) = v[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(c)]) *
                     (inv * inv);
  return rho;
}

std::vector<Operator> random_povm(int d, int outcomes, SeededRng& rng) {
  // E_x = S^{-1/2} G_x S^{-1/2} with random Gram matrices G_x.
  std::vector<Operator> gs;
  Operator s(d);
  for (int k = 0; k < outcomes; ++k) {
    Operator a(d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a.at(r, c) = Complex{rng.next_gaussian(), rng.next_gaussian()};
    Operator g = a * a.adjoint();
    s = s + g;
    gs.push_back(std::move(g));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(s));
  Eigen::MatrixXcd inv_sqrt = solver.operatorInverseSqrt();
  Operator w(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) w.at(r, c) = inv_sqrt(r, c);
  std::vector<Operator> povm;
  for (auto& g : gs) povm.push_back(w * g * w);
  return povm;
}

}  // namespace nlcc::lbtools
