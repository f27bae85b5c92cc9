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

#include "mogame/best_response.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "mogame/matrix_game.h"

namespace mogame {
namespace {

constexpr double kSupportFloor = 1e-15;

void Compositions(int classes, int remaining, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == classes - 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    prefix.push_back(c);
    Compositions(classes, remaining - c, prefix, out);
    prefix.pop_back();
  }
}

// Binomial(r + k - 1, k - 1) with overflow saturation.
int64_t GridSize(int classes, int resolution) {
  double size = 1.0;
  for (int i = 1; i < classes; ++i) {
    size = size * (resolution + i) / i;
    if (size > 1e15) return INT64_MAX;
  }
  return static_cast<int64_t>(std::llround(size));
}

}  // namespace

DeterministicPredictor MixedPredictor::Realize(Rng& rng) const {
  std::vector<Prediction> table;
  table.reserve(support_.size());
  for (const auto& atoms : support_) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double running = 0.0;
    size_t pick = atoms.size() - 1;
    for (size_t i = 0; i < atoms.size(); ++i) {
      running += atoms[i].probability;
      if (u < running) {
        pick = i;
        break;
      }
    }
    table.push_back(atoms[pick].prediction);
  }
  return DeterministicPredictor::Create(std::move(table)).value();
}

DeterministicPredictor MixedPredictor::Mode() const {
  std::vector<Prediction> table;
  table.reserve(support_.size());
  for (const auto& atoms : support_) {
    size_t pick = 0;
    for (size_t i = 1; i < atoms.size(); ++i) {
      if (atoms[i].probability > atoms[pick].probability) pick = i;
    }
    table.push_back(atoms[pick].prediction);
  }
  return DeterministicPredictor::Create(std::move(table)).value();
}

std::vector<std::vector<double>> SimplexGrid(int classes, int resolution) {
  std::vector<std::vector<int>> counts;
  std::vector<int> prefix;
  Compositions(classes, resolution, prefix, counts);
  std::vector<std::vector<double>> grid;
  grid.reserve(counts.size());
  for (const auto& c : counts) {
    std::vector<double> p(classes);
    for (int j = 0; j < classes; ++j) {
      p[j] = static_cast<double>(c[j]) / resolution;
    }
    grid.push_back(std::move(p));
  }
  return grid;
}

absl::StatusOr<MixedPredictor> BestResponse(
    const MultiObjectiveProblem& problem, std::span<const double> q,
    const BestResponseOptions& options) {
  const ObjectiveSet& set = problem.objectives();
  const auto& sig = problem.signature();
  if (set.num_components() != 1 || sig.rows != 1 || !set.one_hot_targets()) {
    return absl::InvalidArgumentError(
        "best response needs a single-row problem with one-hot targets");
  }
  if (q.size() != set.size()) {
    return absl::InvalidArgumentError("mixture length differs from set size");
  }
  if (options.resolution < 1) {
    return absl::InvalidArgumentError("resolution must be >= 1");
  }
  const int k = sig.classes;
  if (GridSize(k, options.resolution) > options.max_grid_points) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "simplex grid for k=%d, r=%d exceeds %d points; use the lazy learner",
        k, options.resolution, options.max_grid_points));
  }
  const auto grid = SimplexGrid(k, options.resolution);
  const int m = static_cast<int>(grid.size());
  std::vector<Prediction> candidates;
  candidates.reserve(m);
  for (const auto& p : grid) candidates.push_back(Prediction::FromTrusted(1, k, p));

  std::vector<std::vector<MixedPredictor::Atom>> support(problem.domain_size());
  std::vector<double> values(problem.domain_size(), 0.0);
  std::vector<double> payoff(static_cast<size_t>(m) * k);
  std::vector<double> coef(k);
  for (int xi = 0; xi < problem.domain_size(); ++xi) {
    const DomainPoint x{xi};
    for (int row = 0; row < m; ++row) {
      std::fill(coef.begin(), coef.end(), 0.0);
      for (int d = 0; d < problem.num_distributions(); ++d) {
        const double weight = problem.LearnerWeight(d, x);
        if (weight <= 0.0) continue;
        for (const auto& branch : problem.distribution(d).branches(x)) {
          if (branch.probability <= 0.0) continue;
          const double scale = weight * branch.probability;
          set.ForEachGate(candidates[row], x, branch.w, d,
                          [&](ObjectiveIndex index, const Activation& a) {
                            const double mass = q[index];
                            if (mass != 0.0) {
                              coef[a.coord] += scale * mass * a.coefficient;
                            }
                          });
        }
      }
      double linear = 0.0;
      for (int j = 0; j < k; ++j) linear += coef[j] * grid[row][j];
      for (int y = 0; y < k; ++y) payoff[row * k + y] = linear - coef[y];
    }
    MatrixGameSolution solution = SolveMatrixGame(payoff, m, k);
    values[xi] = solution.value;
    double kept = 0.0;
    for (int row = 0; row < m; ++row) {
      if (solution.row_strategy[row] > kSupportFloor) {
        support[xi].push_back({candidates[row], solution.row_strategy[row]});
        kept += solution.row_strategy[row];
      }
    }
    for (auto& atom : support[xi]) atom.probability /= kept;
  }
  return MixedPredictor(std::move(support), std::move(values));
}

}  // namespace mogame
