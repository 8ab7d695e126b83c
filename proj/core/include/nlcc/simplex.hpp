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

#ifndef NLCC_SIMPLEX_HPP_
#define NLCC_SIMPLEX_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nlcc::detail {

/// Phase-1 feasibility of {A w = b, w >= 0} by dense tableau simplex with
/// Bland's rule (no cycling). Scalar is double (tolerance > 0) or an exact
/// rational type (tolerance == 0). On infeasibility, `farkas` carries y with
/// yᵀA <= 0 (within tolerance) and yᵀb > 0.
template <typename Scalar>
struct FeasibilityOutcome {
  bool feasible = false;
  std::vector<Scalar> solution;  // w, when feasible
  std::vector<Scalar> farkas;    // y, when infeasible
  Scalar residual{};             // phase-1 objective at termination
};

template <typename Scalar>
FeasibilityOutcome<Scalar> solve_equality_feasibility(std::vector<std::vector<Scalar>> a,
                                                      std::vector<Scalar> b,
                                                      const Scalar& tol) {
  const std::size_t rows = a.size();
  if (rows == 0) throw std::invalid_argument("simplex: no constraints");
  const std::size_t cols = a.front().size();
  for (const auto& row : a) {
    if (row.size() != cols) throw std::invalid_argument("simplex: ragged constraint matrix");
  }
  if (b.size() != rows) throw std::invalid_argument("simplex: rhs size mismatch");

  // Make b nonnegative so the artificial basis is feasible; remember the
  // flips so the Farkas vector can be mapped back to the caller's rows.
  std::vector<bool> flipped(rows, false);
  for (std::size_t r = 0; r < rows; ++r) {
    if (b[r] < Scalar(0)) {
      b[r] = -b[r];
      for (auto& v : a[r]) v = -v;
      flipped[r] = true;
    }
  }

  // Tableau over [real vars | artificials | rhs]; phase-1 cost is the sum of
  // artificials.
  const std::size_t width = cols + rows + 1;
  std::vector<std::vector<Scalar>> t(rows + 1, std::vector<Scalar>(width, Scalar(0)));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) t[r][c] = a[r][c];
    t[r][cols + r] = Scalar(1);
    t[r][width - 1] = b[r];
  }
  // Objective row holds z_j - c_j for min sum(artificials); start from the
  // artificial basis: z_j = sum_r a_rj, c_j = 0 for real vars.
  for (std::size_t c = 0; c < cols; ++c) {
    Scalar s(0);
    for (std::size_t r = 0; r < rows; ++r) s += t[r][c];
    t[rows][c] = s;
  }
  for (std::size_t r = 0; r < rows; ++r) t[rows][width - 1] += b[r];
  // Artificial columns have z_j - c_j = 0 initially.

  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = cols + r;

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    const Scalar inv = Scalar(1) / t[pr][pc];
    for (auto& v : t[pr]) v = v * inv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const Scalar f = t[r][pc];
      if (f == Scalar(0)) continue;
      for (std::size_t c = 0; c < width; ++c) t[r][c] -= f * t[pr][c];
    }
    basis[pr] = pc;
  };

  // Bland's rule: smallest improving column, smallest-ratio row with the
  // smallest basis index on ties.
  const std::size_t total_cols = cols + rows;
  const std::size_t pivot_limit = 1000 * (rows + cols) + 10000;
  std::size_t pivots = 0;
  while (true) {
    if (++pivots > pivot_limit) {
      throw std::runtime_error("simplex: pivot limit exceeded");
    }
    std::size_t enter = total_cols;
    for (std::size_t c = 0; c < total_cols; ++c) {
      if (t[rows][c] > tol) {
        enter = c;
        break;
      }
    }
    if (enter == total_cols) break;
    std::size_t leave = rows;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][enter] <= tol) continue;
      if (leave == rows) {
        leave = r;
        continue;
      }
      const Scalar lhs = t[r][width - 1] * t[leave][enter];
      const Scalar rhs = t[leave][width - 1] * t[r][enter];
      if (lhs < rhs || (lhs == rhs && basis[r] < basis[leave])) leave = r;
    }
    if (leave == rows) break;  // phase-1 objective is bounded below by 0
    pivot(leave, enter);
  }

  FeasibilityOutcome<Scalar> out;
  out.residual = t[rows][width - 1];
  if (out.residual <= tol) {
    out.feasible = true;
    out.solution.assign(cols, Scalar(0));
    for (std::size_t r = 0; r < rows; ++r) {
      if (basis[r] < cols) out.solution[basis[r]] = t[r][width - 1];
    }
    return out;
  }
  // Farkas certificate from the final objective row: for artificial column i,
  // z_j - c_j = y_i - 1. Undo the row flips so y certifies the original rows.
  out.farkas.assign(rows, Scalar(0));
  for (std::size_t r = 0; r < rows; ++r) {
    const Scalar y = t[rows][cols + r] + Scalar(1);
    out.farkas[r] = flipped[r] ? -y : y;
  }
  return out;
}

}  // namespace nlcc::detail

#endif  // NLCC_SIMPLEX_HPP_
