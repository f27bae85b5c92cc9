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

#ifndef MOGAME_PROBLEM_H_
#define MOGAME_PROBLEM_H_

#include <memory>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "mogame/distribution.h"
#include "mogame/objectives.h"
#include "mogame/predictor.h"
#include "mogame/types.h"

namespace mogame {

enum class ProblemKind {
  kMulticalibration,
  kMoment,
  kAgnostic,
  kConditional,
  kCompetitive,
};

const char* ProblemKindName(ProblemKind kind);

// Distributions, objective set and predictor signature of one game.
class MultiObjectiveProblem {
 public:
  // `base` is the unconditioned law that the distributions derive from; it
  // fixes the domain weights used by learners.
  static absl::StatusOr<MultiObjectiveProblem> Create(
      ProblemKind kind, TabularDistribution base,
      std::vector<TabularDistribution> distributions,
      std::shared_ptr<const ObjectiveSet> objectives, const LevelGrid& grid);

  ProblemKind kind() const { return kind_; }
  const TabularDistribution& base_distribution() const { return base_; }
  const std::vector<TabularDistribution>& distributions() const {
    return distributions_;
  }
  const TabularDistribution& distribution(int d) const {
    return distributions_[d];
  }
  int num_distributions() const {
    return static_cast<int>(distributions_.size());
  }
  const ObjectiveSet& objectives() const { return *objectives_; }
  const std::shared_ptr<const ObjectiveSet>& objectives_ptr() const {
    return objectives_;
  }
  const PredictorSignature& signature() const {
    return objectives_->signature();
  }
  const LevelGrid& grid() const { return grid_; }
  int domain_size() const { return base_.domain_size(); }
  int classes() const { return signature().classes; }

  // Relative weight P_d(x) / px(x), scaled so the maximum over (d, x) is 1.
  double LearnerWeight(int d, DomainPoint x) const {
    return learner_weight_[d][x.index];
  }

  absl::Status CheckPredictor(const DeterministicPredictor& h) const;

 private:
  MultiObjectiveProblem(ProblemKind kind, TabularDistribution base,
                        std::vector<TabularDistribution> distributions,
                        std::shared_ptr<const ObjectiveSet> objectives,
                        const LevelGrid& grid)
      : kind_(kind),
        base_(std::move(base)),
        distributions_(std::move(distributions)),
        objectives_(std::move(objectives)),
        grid_(grid) {}

  ProblemKind kind_;
  TabularDistribution base_;
  std::vector<TabularDistribution> distributions_;
  std::shared_ptr<const ObjectiveSet> objectives_;
  LevelGrid grid_;
  std::vector<std::vector<double>> learner_weight_;
};

// The distribution's memberships must equal the family's.
absl::StatusOr<MultiObjectiveProblem> BuildMulticalibrationProblem(
    const TabularDistribution& dist, const GroupFamily& groups,
    const LevelGrid& grid, const CalibrationSetOptions& options = {});

// Binary labels; r >= 2 moment rows.
absl::StatusOr<MultiObjectiveProblem> BuildMomentProblem(
    const TabularDistribution& dist, const GroupFamily& groups,
    const LevelGrid& grid, int moments, const MomentSetOptions& options = {});

// Identity groups are the distribution's membership bits.
absl::StatusOr<MultiObjectiveProblem> BuildAgnosticProblem(
    const TabularDistribution& dist, const LevelGrid& grid,
    const CalibrationSetOptions& options = {});

// One distribution D | x in S per group.
absl::StatusOr<MultiObjectiveProblem> BuildConditionalProblem(
    const TabularDistribution& dist, const GroupFamily& groups,
    const LevelGrid& grid, const CalibrationSetOptions& options = {});

// Same distributions, amplified objective set.
absl::StatusOr<MultiObjectiveProblem> BuildCompetitiveProblem(
    const MultiObjectiveProblem& base,
    std::vector<DeterministicPredictor> baselines);

// Exact losses.

using SparseLosses = absl::flat_hash_map<ObjectiveIndex, double>;

struct ObjectiveValue {
  ObjectiveIndex index = 0;
  double value = 0.0;
};

// Visits weight · mass · ℓ(h, z) for every active objective at every atom of
// every distribution. Summing per index gives weight · L_ℓ(h).
void AccumulateExactLosses(const MultiObjectiveProblem& problem,
                           const DeterministicPredictor& h, double weight,
                           ActiveVisitor visit);

SparseLosses ExactLossMap(const MultiObjectiveProblem& problem,
                          const DeterministicPredictor& h);
SparseLosses ExactLossMap(const MultiObjectiveProblem& problem,
                          const EnsemblePredictor& ensemble);

double ExactLoss(const MultiObjectiveProblem& problem, ObjectiveIndex index,
                 const DeterministicPredictor& h);

// Max over [begin, end), counting objectives absent from `losses` as 0.
// Ties resolve to the smallest index.
ObjectiveValue MaxOverRange(const SparseLosses& losses, ObjectiveIndex begin,
                            ObjectiveIndex end);

// Max exact loss over a component (or over the whole set when
// component < 0).
ObjectiveValue MaxExactLoss(const MultiObjectiveProblem& problem,
                            const DeterministicPredictor& h,
                            int component = -1);
ObjectiveValue MaxExactLoss(const MultiObjectiveProblem& problem,
                            const EnsemblePredictor& ensemble,
                            int component = -1);

}  // namespace mogame

#endif  // MOGAME_PROBLEM_H_
