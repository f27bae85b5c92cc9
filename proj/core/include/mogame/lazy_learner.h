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

#ifndef MOGAME_LAZY_LEARNER_H_
#define MOGAME_LAZY_LEARNER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "mogame/hedge.h"
#include "mogame/predictor.h"
#include "mogame/problem.h"
#include "mogame/types.h"

namespace mogame {

// Deterministic per-point learner: each point owns `rows` independent Hedge
// instances over the k classes, created on first update. The Hedge
// distributions are the emitted prediction rows.
class PointLazyLearner {
 public:
  PointLazyLearner(int domain_size, int rows, int classes, int64_t horizon);

  int domain_size() const { return domain_size_; }
  int rows() const { return rows_; }
  int classes() const { return classes_; }
  int64_t horizon() const { return horizon_; }

  Prediction Predict(DomainPoint x) const;
  DeterministicPredictor PredictAll() const;
  bool touched(DomainPoint x) const { return states_.contains(x.index); }

  // Loss vector over the k classes for one row at x.
  void Update(DomainPoint x, int row, std::span<const double> loss);

  std::string ToJson() const;
  static absl::StatusOr<PointLazyLearner> FromJson(const std::string& text);

 private:
  std::vector<Hedge>& StateAt(DomainPoint x);

  int domain_size_;
  int rows_;
  int classes_;
  int64_t horizon_;
  absl::flat_hash_map<int, std::vector<Hedge>> states_;
};

// Joins per-component predictions into one prediction per point, in
// component order.
DeterministicPredictor JoinComponents(
    const std::vector<DeterministicPredictor>& components);

// Feeds `learner` (owning `component`'s rows) the per-point loss vectors
// f(h, x) of one objective, averaged over the membership law at x and
// weighted by the problem's learner weight. Points where the gate is closed
// receive no update.
void FeedObjective(PointLazyLearner& learner,
                   const MultiObjectiveProblem& problem, int component,
                   ObjectiveIndex index, const DeterministicPredictor& h);

// Same for a mixture; q[i] weighs objective component_begin + i.
void FeedMixture(PointLazyLearner& learner,
                 const MultiObjectiveProblem& problem, int component,
                 std::span<const double> q, const DeterministicPredictor& h);

}  // namespace mogame

#endif  // MOGAME_LAZY_LEARNER_H_
