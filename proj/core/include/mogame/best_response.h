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

// Distribution-free best response to a mixture of one-hot calibration
// objectives. At every point it solves the game between the simplex grid of
// step 1/r (rows) and the k vertex labels (columns), so the mixture's
// expected loss under the returned strategy is at most 1/r for every label.

#ifndef MOGAME_BEST_RESPONSE_H_
#define MOGAME_BEST_RESPONSE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "mogame/base.h"
#include "mogame/predictor.h"
#include "mogame/problem.h"

namespace mogame {

struct BestResponseOptions {
  int resolution = 20;
  int64_t max_grid_points = 5000;
};

// Per-point distribution over grid predictions.
class MixedPredictor {
 public:
  struct Atom {
    Prediction prediction;
    double probability = 0.0;
  };

  explicit MixedPredictor(std::vector<std::vector<Atom>> support,
                          std::vector<double> values)
      : support_(std::move(support)), values_(std::move(values)) {}

  int domain_size() const { return static_cast<int>(support_.size()); }
  const std::vector<Atom>& at(DomainPoint x) const { return support_[x.index]; }
  // Worst-label value of the per-point game at x.
  double value(DomainPoint x) const { return values_[x.index]; }

  // Independent draw at every point.
  DeterministicPredictor Realize(Rng& rng) const;
  // Highest-probability atom at every point (first on ties).
  DeterministicPredictor Mode() const;

 private:
  std::vector<std::vector<Atom>> support_;
  std::vector<double> values_;
};

// Points of the simplex grid {c / r : c in N^k, sum c = r}.
std::vector<std::vector<double>> SimplexGrid(int classes, int resolution);

// `q` is a distribution over the whole objective set of a single-component
// problem with one-hot targets.
absl::StatusOr<MixedPredictor> BestResponse(
    const MultiObjectiveProblem& problem, std::span<const double> q,
    const BestResponseOptions& options = {});

}  // namespace mogame

#endif  // MOGAME_BEST_RESPONSE_H_
