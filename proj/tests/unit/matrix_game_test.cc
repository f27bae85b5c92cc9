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
#include <random>

#include "gtest/gtest.h"
#include "mogame/base.h"

namespace mogame {
namespace {

// Value of a row strategy: max over columns.
double ValueOf(const std::vector<double>& a, int rows, int cols,
               const std::vector<double>& p) {
  double best = -1e300;
  for (int j = 0; j < cols; ++j) {
    double s = 0;
    for (int i = 0; i < rows; ++i) s += p[i] * a[i * cols + j];
    best = std::max(best, s);
  }
  return best;
}

TEST(MatrixGameTest, MatchingPennies) {
  const std::vector<double> a = {1, -1, -1, 1};
  const auto sol = SolveMatrixGame(a, 2, 2);
  EXPECT_NEAR(sol.value, 0.0, 1e-12);
  EXPECT_NEAR(sol.row_strategy[0], 0.5, 1e-12);
}

TEST(MatrixGameTest, DominatedRowIsDropped) {
  const std::vector<double> a = {0.2, 0.3, 0.9, 0.8, 0.1, 0.25};
  const auto sol = SolveMatrixGame(a, 3, 2);
  EXPECT_NEAR(sol.value, ValueOf(a, 3, 2, sol.row_strategy), 1e-12);
  EXPECT_LE(sol.value, 0.3 + 1e-12);
}

// Random games: no pure or two-row mixed strategy beats the solver, and its
// reported value equals the value of its strategy.
TEST(MatrixGameTest, RandomGamesAgainstPairSearch) {
  Rng rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 2 + trial % 5, cols = 2 + trial % 3;
    std::vector<double> a(rows * cols);
    for (double& v : a) v = u(rng);
    const auto sol = SolveMatrixGame(a, rows, cols);
    double s = 0;
    for (double p : sol.row_strategy) {
      EXPECT_GE(p, -1e-12);
      s += p;
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
    EXPECT_NEAR(sol.value, ValueOf(a, rows, cols, sol.row_strategy), 1e-9);
    for (int i = 0; i < rows; ++i) {
      for (int k = 0; k < rows; ++k) {
        for (int step = 0; step <= 100; ++step) {
          std::vector<double> p(rows, 0.0);
          p[i] += step / 100.0;
          p[k] += 1 - step / 100.0;
          EXPECT_GE(ValueOf(a, rows, cols, p), sol.value - 1e-9);
        }
      }
    }
  }
}

}  // namespace
}  // namespace mogame
