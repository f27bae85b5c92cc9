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

#ifndef MOGAME_MATRIX_GAME_H_
#define MOGAME_MATRIX_GAME_H_

#include <vector>

namespace mogame {

struct MatrixGameSolution {
  // Minimizing row player's optimal mixed strategy.
  std::vector<double> row_strategy;
  // max_j (row_strategy^T A)_j.
  double value = 0.0;
};

// Solves min_p max_j (p^T A)_j for a rows x cols payoff matrix stored
// row-major. Two-column games use an exact pairwise search; larger games use
// a dense simplex with Bland's rule.
MatrixGameSolution SolveMatrixGame(const std::vector<double>& payoff, int rows,
                                   int cols);

}  // namespace mogame

#endif  // MOGAME_MATRIX_GAME_H_
