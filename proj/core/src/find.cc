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

#include <cmath>
#include <limits>

#include "mogame/dynamics.h"

namespace mogame {

int64_t FindSampleSize(double epsilon, double delta, int64_t candidates,
                       double set_size) {
  return static_cast<int64_t>(
      std::ceil(8.0 / (epsilon * epsilon) *
                std::log(4.0 * static_cast<double>(candidates) * set_size /
                         delta)));
}

absl::StatusOr<FindResult> Find(
    const MultiObjectiveProblem& problem,
    std::span<const DeterministicPredictor> candidates, double epsilon,
    double delta, FindMode mode, Rng& rng, const OracleConfig& oracle) {
  if (candidates.empty()) {
    return absl::InvalidArgumentError("no candidates to select from");
  }
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("Find needs ε > 0 and δ in (0, 1)");
  }
  for (const auto& h : candidates) {
    MOGAME_RETURN_IF_ERROR(problem.CheckPredictor(h));
  }
  const ObjectiveSet& set = problem.objectives();
  const int64_t T = static_cast<int64_t>(candidates.size());
  FindResult result;
  result.estimate = std::numeric_limits<double>::infinity();

  if (mode == FindMode::kSamples) {
    const int64_t n =
        FindSampleSize(epsilon, delta, T, static_cast<double>(set.size()));
    std::vector<std::vector<WeightedSample>> buffers;
    for (const auto& dist : problem.distributions()) {
      buffers.push_back(DrawBuffer(dist, n, rng));
      result.samples_drawn += n;
    }
    for (int64_t t = 0; t < T; ++t) {
      const double value =
          MaxOverRange(BufferLosses(problem, candidates[t], buffers), 0,
                       set.size())
              .value;
      if (value < result.estimate) {
        result.estimate = value;
        result.index = t;
      }
    }
    return result;
  }

  std::vector<AdversaryOracle> oracles;
  for (int c = 0; c < set.num_components(); ++c) {
    MOGAME_ASSIGN_OR_RETURN(AdversaryOracle o,
                            AdversaryOracle::Create(problem, c, oracle, rng));
    oracles.push_back(std::move(o));
  }
  // Below-threshold answers certify a loss under the reference value.
  auto estimate_of = [&](const OracleAnswer& a) {
    return a.index.has_value() ? a.estimate : oracle.reference.value_or(0.0);
  };
  int worst_component = 0;
  for (int64_t t = 0; t < T; ++t) {
    double value = -std::numeric_limits<double>::infinity();
    int worst = 0;
    for (int c = 0; c < static_cast<int>(oracles.size()); ++c) {
      MOGAME_ASSIGN_OR_RETURN(OracleAnswer a,
                              oracles[c].Query(candidates[t], rng));
      if (estimate_of(a) > value) {
        value = estimate_of(a);
        worst = c;
      }
    }
    if (value < result.estimate) {
      result.estimate = value;
      result.index = t;
      worst_component = worst;
    }
  }
  // Confirm the winner with one more query on its worst component.
  MOGAME_ASSIGN_OR_RETURN(
      OracleAnswer confirm,
      oracles[worst_component].Query(candidates[result.index], rng));
  result.estimate = estimate_of(confirm);
  for (const auto& o : oracles) {
    result.oracle_calls += o.counters().oracle_calls;
    result.samples_drawn += o.counters().samples_drawn;
  }
  return result;
}

}  // namespace mogame
