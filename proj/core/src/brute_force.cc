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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "mogame/audit.h"
#include "mogame/best_response.h"

namespace mogame {
namespace {

constexpr uint64_t kMaxDenseObjectives = 10'000'000;

std::vector<Prediction> PointChoices(const PredictorSignature& sig,
                                     int resolution) {
  const auto grid = SimplexGrid(sig.classes, resolution);
  std::vector<std::vector<double>> rows = {{}};
  for (int r = 0; r < sig.rows; ++r) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : rows) {
      for (const auto& p : grid) {
        auto v = prefix;
        v.insert(v.end(), p.begin(), p.end());
        next.push_back(std::move(v));
      }
    }
    rows = std::move(next);
  }
  std::vector<Prediction> out;
  out.reserve(rows.size());
  for (auto& v : rows) {
    out.push_back(Prediction::FromTrusted(sig.rows, sig.classes, std::move(v)));
  }
  return out;
}

}  // namespace

absl::StatusOr<BruteForceResult> BruteForceOpt(
    const MultiObjectiveProblem& problem, double step,
    const BruteForceOptions& options) {
  const int n = problem.domain_size();
  if (n > options.max_points) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "brute force is capped at %d points, got %d", options.max_points, n));
  }
  if (!(step >= options.min_step - 1e-12) || step > 1.0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grid step must lie in [%g, 1], got %g", options.min_step, step));
  }
  const int resolution = static_cast<int>(std::lround(1.0 / step));
  if (std::abs(resolution * step - 1.0) > 1e-9) {
    return absl::InvalidArgumentError("grid step must divide 1");
  }
  const ObjectiveSet& set = problem.objectives();
  if (set.size() > kMaxDenseObjectives) {
    return absl::ResourceExhaustedError("objective set too large to enumerate");
  }
  const auto choices = PointChoices(problem.signature(), resolution);
  const double total = std::pow(static_cast<double>(choices.size()), n);
  if (total > static_cast<double>(options.max_predictors)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "%g predictors exceed the enumeration cap of %d", total,
        options.max_predictors));
  }

  // contrib[x][c]: sparse objective losses contributed by point x when it
  // predicts choice c. The total is a sum over points.
  std::vector<std::vector<std::vector<std::pair<ObjectiveIndex, double>>>>
      contrib(n, std::vector<std::vector<std::pair<ObjectiveIndex, double>>>(
                     choices.size()));
  for (int d = 0; d < problem.num_distributions(); ++d) {
    for (const auto& atom : problem.distribution(d).atoms()) {
      const int x = atom.sample.x.index;
      for (size_t c = 0; c < choices.size(); ++c) {
        set.ForEachActive(choices[c], atom.sample, d,
                          [&](ObjectiveIndex i, double value) {
                            contrib[x][c].emplace_back(i, atom.mass * value);
                          });
      }
    }
  }

  std::vector<double> losses(set.size(), 0.0);
  std::vector<size_t> pick(n, 0);
  std::vector<size_t> best_pick(n, 0);
  BruteForceResult result;
  result.value = std::numeric_limits<double>::infinity();
  // Depth-first over points, adding each point's contribution on the way
  // down and removing it on the way up.
  auto recurse = [&](auto&& self, int x) -> void {
    if (x == n) {
      ++result.evaluated;
      const double value = *std::max_element(losses.begin(), losses.end());
      // The running sums drift by rounding; only clear improvements count.
      if (value < result.value - 1e-12) {
        result.value = value;
        best_pick = pick;
      }
      return;
    }
    for (size_t c = 0; c < choices.size(); ++c) {
      pick[x] = c;
      for (const auto& [i, v] : contrib[x][c]) losses[i] += v;
      self(self, x + 1);
      for (const auto& [i, v] : contrib[x][c]) losses[i] -= v;
    }
  };
  recurse(recurse, 0);

  std::vector<Prediction> table;
  for (int x = 0; x < n; ++x) table.push_back(choices[best_pick[x]]);
  MOGAME_ASSIGN_OR_RETURN(result.argmin,
                          DeterministicPredictor::Create(std::move(table)));
  result.value = MaxExactLoss(problem, result.argmin).value;
  result.slack = step / 2.0;
  return result;
}

}  // namespace mogame
