// Copyright 2026 The qgh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// @file
/// Dense phase-I simplex for the feasibility problem {λ ≥ 0 : Aλ = b}.

#include <cmath>
#include <cstddef>
#include <vector>

#include "qgh/linalg.hpp"

namespace qgh {

struct LpFeasibility {
  bool feasible = false;
  std::vector<double> solution;  ///< λ, valid when feasible
  double infeasibility = 0.0;    ///< optimal phase-I objective Σ artificials
  int pivots = 0;
};

/// Minimizes the sum of artificial variables. Pricing is Dantzig's rule; a run
/// of degenerate pivots switches to Bland's rule until the objective moves
/// again. Feasible iff the phase-I optimum is ≤ tol·(1 + ||b||₁).
inline LpFeasibility lp_feasibility(const RealMatrix& a, std::vector<double> b,
                                    double tol = 1e-9) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (b.size() != rows) throw InputError("lp_feasibility: rhs size mismatch");

  // Tableau columns: structural 0..cols-1, artificial cols..cols+rows-1, rhs.
  const std::size_t width = cols + rows + 1;
  RealMatrix t(rows + 1, width);
  double b_norm = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) t(i, j) = sign * a(i, j);
    t(i, cols + i) = 1.0;
    t(i, width - 1) = sign * b[i];
    b_norm += std::abs(b[i]);
  }
  // Objective row holds reduced costs of min Σ artificials.
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < cols || j == width - 1) t(rows, j) -= t(i, j);

  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  constexpr double eps = 1e-12;
  constexpr int kDegenerateRun = 50;
  const long max_pivots = 100 * static_cast<long>(rows + cols) + 1000;
  LpFeasibility out;
  int degenerate = 0;
  for (;;) {
    std::size_t enter = width;
    double most = -eps;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t(rows, j) >= most) continue;
      enter = j;
      if (degenerate >= kDegenerateRun) break;  // Bland: first improving column
      most = t(rows, j);
    }
    if (enter == width) break;
    if (out.pivots >= max_pivots) throw SolverError("lp_feasibility: pivot limit reached");

    std::size_t leave = rows;
    double best = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t(i, enter) <= eps) continue;
      const double ratio = t(i, width - 1) / t(i, enter);
      if (leave == rows || ratio < best - eps ||
          (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded cannot happen in phase I

    const double piv = t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
    ++out.pivots;
    degenerate = best <= eps ? degenerate + 1 : 0;
  }

  out.infeasibility = -t(rows, width - 1);
  out.feasible = out.infeasibility <= tol * (1.0 + b_norm);
  out.solution.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) out.solution[basis[i]] = t(i, width - 1);
  return out;
}

}  // namespace qgh
