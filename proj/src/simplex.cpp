// Copyright 2026 The valuebid Authors
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

#include "valuebid/simplex.hpp"

#include <cstddef>

#include "valuebid/errors.hpp"

namespace valuebid {

SimplexSolution SolveMax(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.bounds.size() != m) {
    throw ContractError("one bound per constraint row required");
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (lp.rows[k].size() != n) {
      throw ContractError("constraint row width differs from objective");
    }
    if (lp.bounds[k].Sign() < 0) {
      throw ContractError("negative bound; the slack basis would be infeasible");
    }
  }

  // Tableau layout: columns 0..n-1 structural, n..n+m-1 slack, last column
  // the right-hand side. Row m holds the reduced costs (negated objective).
  std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(n + m + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < n; ++j) t[k][j] = lp.rows[k][j];
    t[k][n + k] = Rat(1);
    t[k][n + m] = lp.bounds[k];
    basis[k] = n + k;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -lp.objective[j];

  for (;;) {
    // Bland: entering variable is the lowest-index column with a negative
    // reduced cost.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (t[m][j].Sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n + m) break;

    // Leaving row: minimum ratio, ties by the lowest basis variable index.
    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t k = 0; k < m; ++k) {
      if (t[k][enter].Sign() <= 0) continue;
      Rat ratio = t[k][n + m] / t[k][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[k] < basis[leave])) {
        leave = k;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      throw ContractError("objective is unbounded above");
    }

    const Rat pivot = t[leave][enter];
    for (Rat& cell : t[leave]) cell /= pivot;
    for (std::size_t k = 0; k <= m; ++k) {
      if (k == leave || t[k][enter].IsZero()) continue;
      const Rat factor = t[k][enter];
      for (std::size_t j = 0; j <= n + m; ++j) {
        t[k][j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  SimplexSolution out;
  out.x.assign(n, Rat(0));
  for (std::size_t k = 0; k < m; ++k) {
    if (basis[k] < n) out.x[basis[k]] = t[k][n + m];
  }
  out.value = t[m][n + m];
  return out;
}

}  // namespace valuebid
