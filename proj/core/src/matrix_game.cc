//
// Copyright 2026 The mogame Authors
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
//

#include "mogame/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mogame/base.h"

namespace mogame {
namespace {

constexpr double kPivotEps = 1e-12;

double StrategyValue(const std::vector<double>& a, int rows, int cols,
                     const std::vector<double>& p) {
  double value = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < cols; ++j) {
    double v = 0.0;
    for (int i = 0; i < rows; ++i) v += p[i] * a[i * cols + j];
    value = std::max(value, v);
  }
  return value;
}

// A row player facing two columns has an optimal strategy supported on at
// most two rows.
MatrixGameSolution SolveTwoColumns(const std::vector<double>& a, int rows) {
  int best_i = 0;
  int best_l = -1;
  double best_alpha = 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rows; ++i) {
    const double v = std::max(a[2 * i], a[2 * i + 1]);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  for (int i = 0; i < rows; ++i) {
    const double di = a[2 * i] - a[2 * i + 1];
    if (di <= 0.0) continue;
    for (int l = 0; l < rows; ++l) {
      const double dl = a[2 * l] - a[2 * l + 1];
      if (dl >= 0.0) continue;
      const double alpha = -dl / (di - dl);
      const double v = alpha * a[2 * i] + (1.0 - alpha) * a[2 * l];
      if (v < best - 1e-15) {
        best = v;
        best_i = i;
        best_l = l;
        best_alpha = alpha;
      }
    }
  }
  MatrixGameSolution out;
  out.row_strategy.assign(rows, 0.0);
  out.row_strategy[best_i] = best_l < 0 ? 1.0 : best_alpha;
  if (best_l >= 0) out.row_strategy[best_l] = 1.0 - best_alpha;
  out.value = StrategyValue(a, rows, 2, out.row_strategy);
  return out;
}

// max 1^T u  s.t.  B^T u <= 1, u >= 0, with B = A + shift > 0. The optimum
// is 1 / v' where v' is the shifted game value, and p = u / sum(u).
MatrixGameSolution SolveSimplex(const std::vector<double>& a, int rows,
                                int cols) {
  double lowest = *std::min_element(a.begin(), a.end());
  const double shift = 1.0 - std::min(lowest, 0.0);
  const int m = cols;
  const int n = rows;
  const int width = n + m + 1;
  std::vector<double> t((m + 1) * width, 0.0);
  auto at = [&](int r, int c) -> double& { return t[r * width + c]; };
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) at(j, i) = a[i * cols + j] + shift;
    at(j, n + j) = 1.0;
    at(j, width - 1) = 1.0;
  }
  for (int i = 0; i < n; ++i) at(m, i) = -1.0;
  std::vector<int> basis(m);
  for (int j = 0; j < m; ++j) basis[j] = n + j;

  for (int iteration = 0; iteration < 100000; ++iteration) {
    int enter = -1;
    for (int c = 0; c < n + m; ++c) {
      if (at(m, c) < -kPivotEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      if (at(r, enter) <= kPivotEps) continue;
      const double ratio = at(r, width - 1) / at(r, enter);
      if (ratio < best_ratio - kPivotEps ||
          (std::abs(ratio - best_ratio) <= kPivotEps &&
           basis[r] < basis[leave])) {
        best_ratio = ratio;
        leave = r;
      }
    }
    // B > 0 keeps the program bounded.
    MOGAME_CHECK(leave >= 0, "matrix game program is unbounded");
    const double pivot = at(leave, enter);
    for (int c = 0; c < width; ++c) at(leave, c) /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (int c = 0; c < width; ++c) at(r, c) -= factor * at(leave, c);
    }
    basis[leave] = enter;
  }

  std::vector<double> u(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) u[basis[r]] = std::max(0.0, at(r, width - 1));
  }
  double total = 0.0;
  for (double v : u) total += v;
  MatrixGameSolution out;
  out.row_strategy.assign(n, 0.0);
  if (total > 0.0) {
    for (int i = 0; i < n; ++i) out.row_strategy[i] = u[i] / total;
  } else {
    out.row_strategy[0] = 1.0;
  }
  out.value = StrategyValue(a, rows, cols, out.row_strategy);
  return out;
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const std::vector<double>& payoff, int rows,
                                   int cols) {
  MOGAME_CHECK(rows >= 1 && cols >= 1 &&
                   payoff.size() == static_cast<size_t>(rows) * cols,
               "payoff matrix has the wrong shape");
  if (cols == 1) {
    MatrixGameSolution out;
    out.row_strategy.assign(rows, 0.0);
    const int best = static_cast<int>(
        std::min_element(payoff.begin(), payoff.end()) - payoff.begin());
    out.row_strategy[best] = 1.0;
    out.value = payoff[best];
    return out;
  }
  if (cols == 2) return SolveTwoColumns(payoff, rows);
  return SolveSimplex(payoff, rows, cols);
}

}  // namespace mogame
