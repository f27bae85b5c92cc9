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

#include "mogame/problem.h"

#include <algorithm>

#include "absl/strings/str_format.h"

namespace mogame {

const char* ProblemKindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kMulticalibration:
      return "mc";
    case ProblemKind::kMoment:
      return "moment";
    case ProblemKind::kAgnostic:
      return "agnostic";
    case ProblemKind::kConditional:
      return "conditional";
    case ProblemKind::kCompetitive:
      return "competitive";
  }
  return "unknown";
}

absl::StatusOr<MultiObjectiveProblem> MultiObjectiveProblem::Create(
    ProblemKind kind, TabularDistribution base,
    std::vector<TabularDistribution> distributions,
    std::shared_ptr<const ObjectiveSet> objectives, const LevelGrid& grid) {
  if (distributions.empty()) {
    return absl::InvalidArgumentError("problem needs a distribution");
  }
  if (objectives == nullptr || objectives->size() == 0) {
    return absl::InvalidArgumentError("problem needs a nonempty objective set");
  }
  if (objectives->num_distributions() !=
      static_cast<int>(distributions.size())) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "objective set expects %d distributions, got %d",
        objectives->num_distributions(), distributions.size()));
  }
  for (const auto& d : distributions) {
    if (d.domain_size() != base.domain_size() ||
        d.num_classes() != objectives->signature().classes) {
      return absl::InvalidArgumentError(
          "distributions disagree with the domain or class count");
    }
  }
  MultiObjectiveProblem problem(kind, std::move(base),
                                std::move(distributions),
                                std::move(objectives), grid);
  const int n = problem.domain_size();
  problem.learner_weight_.assign(problem.num_distributions(),
                                 std::vector<double>(n, 0.0));
  double max_ratio = 0.0;
  for (int d = 0; d < problem.num_distributions(); ++d) {
    for (int x = 0; x < n; ++x) {
      const double base_px = problem.base_.px()[x];
      if (base_px <= 0.0) continue;
      const double ratio = problem.distributions_[d].px()[x] / base_px;
      problem.learner_weight_[d][x] = ratio;
      max_ratio = std::max(max_ratio, ratio);
    }
  }
  if (max_ratio > 0.0) {
    for (auto& row : problem.learner_weight_) {
      for (double& v : row) v /= max_ratio;
    }
  }
  return problem;
}

absl::Status MultiObjectiveProblem::CheckPredictor(
    const DeterministicPredictor& h) const {
  if (h.domain_size() != domain_size() || h.rows() != signature().rows ||
      h.classes() != signature().classes) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "predictor signature (|X|=%d, r=%d, k=%d) does not match the problem "
        "(|X|=%d, r=%d, k=%d)",
        h.domain_size(), h.rows(), h.classes(), domain_size(),
        signature().rows, signature().classes));
  }
  return absl::OkStatus();
}

namespace {

absl::Status CheckFeatureGroups(const TabularDistribution& dist,
                                const GroupFamily& groups) {
  if (dist.domain_size() != groups.domain_size()) {
    return absl::InvalidArgumentError(
        "group family and distribution have different domains");
  }
  for (int x = 0; x < dist.domain_size(); ++x) {
    const GroupMask expected = groups.MaskOf(DomainPoint{x});
    for (const auto& branch : dist.branches(DomainPoint{x})) {
      if (branch.probability > 0.0 && branch.w != expected) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "point %d: membership bits differ from the group family", x));
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<MultiObjectiveProblem> BuildMulticalibrationProblem(
    const TabularDistribution& dist, const GroupFamily& groups,
    const LevelGrid& grid, const CalibrationSetOptions& options) {
  MOGAME_RETURN_IF_ERROR(CheckFeatureGroups(dist, groups));
  MOGAME_ASSIGN_OR_RETURN(
      auto set,
      BuildMulticalibObjectives(groups, grid, dist.num_classes(), options));
  return MultiObjectiveProblem::Create(ProblemKind::kMulticalibration, dist,
                                       {dist}, std::move(set), grid);
}

absl::StatusOr<MultiObjectiveProblem> BuildMomentProblem(
    const TabularDistribution& dist, const GroupFamily& groups,
    const LevelGrid& grid, int moments, const MomentSetOptions& options) {
  if (dist.num_classes() != 2) {
    return absl::InvalidArgumentError("moment calibration needs binary labels");
  }
  MOGAME_RETURN_IF_ERROR(CheckFeatureGroups(dist, groups));
  MOGAME_ASSIGN_OR_RETURN(
      auto set, BuildMomentSet(groups.size(), grid, moments, options));
  return MultiObjectiveProblem::Create(ProblemKind::kMoment, dist, {dist},
                                       std::move(set), grid);
}

absl::StatusOr<MultiObjectiveProblem> BuildAgnosticProblem(
    const TabularDistribution& dist, const LevelGrid& grid,
    const CalibrationSetOptions& options) {
  MOGAME_ASSIGN_OR_RETURN(
      auto set, BuildCalibrationSet(CalibrationKind::kAgnostic,
                                    dist.num_groups(), grid,
                                    dist.num_classes(), options));
  return MultiObjectiveProblem::Create(ProblemKind::kAgnostic, dist, {dist},
                                       std::move(set), grid);
}

absl::StatusOr<MultiObjectiveProblem> BuildConditionalProblem(
    const TabularDistribution& dist, const GroupFamily& groups,
    const LevelGrid& grid, const CalibrationSetOptions& options) {
  MOGAME_RETURN_IF_ERROR(CheckFeatureGroups(dist, groups));
  std::vector<TabularDistribution> conditionals;
  for (int g = 0; g < groups.size(); ++g) {
    MOGAME_ASSIGN_OR_RETURN(auto conditional, dist.ConditionOnGroup(g));
    conditionals.push_back(std::move(conditional));
  }
  MOGAME_ASSIGN_OR_RETURN(
      auto set, BuildCalibrationSet(CalibrationKind::kConditional,
                                    groups.size(), grid, dist.num_classes(),
                                    options));
  return MultiObjectiveProblem::Create(ProblemKind::kConditional, dist,
                                       std::move(conditionals), std::move(set),
                                       grid);
}

absl::StatusOr<MultiObjectiveProblem> BuildCompetitiveProblem(
    const MultiObjectiveProblem& base,
    std::vector<DeterministicPredictor> baselines) {
  for (const auto& b : baselines) MOGAME_RETURN_IF_ERROR(base.CheckPredictor(b));
  MOGAME_ASSIGN_OR_RETURN(
      auto set, AmplifyCompetitive(base.objectives_ptr(), std::move(baselines)));
  return MultiObjectiveProblem::Create(ProblemKind::kCompetitive,
                                       base.base_distribution(),
                                       base.distributions(), std::move(set),
                                       base.grid());
}

void AccumulateExactLosses(const MultiObjectiveProblem& problem,
                           const DeterministicPredictor& h, double weight,
                           ActiveVisitor visit) {
  const ObjectiveSet& set = problem.objectives();
  for (int d = 0; d < problem.num_distributions(); ++d) {
    for (const auto& atom : problem.distribution(d).atoms()) {
      const double mass = weight * atom.mass;
      set.ForEachActive(h.at(atom.sample.x), atom.sample, d,
                        [&](ObjectiveIndex index, double value) {
                          visit(index, mass * value);
                        });
    }
  }
}

SparseLosses ExactLossMap(const MultiObjectiveProblem& problem,
                          const DeterministicPredictor& h) {
  SparseLosses losses;
  AccumulateExactLosses(problem, h, 1.0,
                        [&](ObjectiveIndex index, double contribution) {
                          losses[index] += contribution;
                        });
  return losses;
}

SparseLosses ExactLossMap(const MultiObjectiveProblem& problem,
                          const EnsemblePredictor& ensemble) {
  SparseLosses losses;
  for (const auto& member : ensemble.members()) {
    AccumulateExactLosses(problem, member, ensemble.weight(),
                          [&](ObjectiveIndex index, double contribution) {
                            losses[index] += contribution;
                          });
  }
  return losses;
}

double ExactLoss(const MultiObjectiveProblem& problem, ObjectiveIndex index,
                 const DeterministicPredictor& h) {
  const ObjectiveSet& set = problem.objectives();
  const auto& dist = problem.distribution(set.DistributionOf(index));
  return ExactExpectation(dist, [&](const Sample& z) {
    return set.Evaluate(index, h.at(z.x), z);
  });
}

ObjectiveValue MaxOverRange(const SparseLosses& losses, ObjectiveIndex begin,
                            ObjectiveIndex end) {
  ObjectiveValue best{end, -std::numeric_limits<double>::infinity()};
  uint64_t visited_in_range = 0;
  for (const auto& [index, value] : losses) {
    if (index < begin || index >= end) continue;
    ++visited_in_range;
    if (value > best.value || (value == best.value && index < best.index)) {
      best = {index, value};
    }
  }
  if (visited_in_range < end - begin) {
    // Some objective in range was never active and has loss exactly 0.
    ObjectiveIndex zero = begin;
    while (losses.contains(zero)) ++zero;
    if (0.0 > best.value || (0.0 == best.value && zero < best.index)) {
      best = {zero, 0.0};
    }
  }
  return best;
}

namespace {

std::pair<ObjectiveIndex, ObjectiveIndex> Range(const ObjectiveSet& set,
                                                int component) {
  if (component < 0) return {0, set.size()};
  return {set.component_begin(component), set.component_end(component)};
}

}  // namespace

ObjectiveValue MaxExactLoss(const MultiObjectiveProblem& problem,
                            const DeterministicPredictor& h, int component) {
  auto [begin, end] = Range(problem.objectives(), component);
  return MaxOverRange(ExactLossMap(problem, h), begin, end);
}

ObjectiveValue MaxExactLoss(const MultiObjectiveProblem& problem,
                            const EnsemblePredictor& ensemble, int component) {
  auto [begin, end] = Range(problem.objectives(), component);
  return MaxOverRange(ExactLossMap(problem, ensemble), begin, end);
}

}  // namespace mogame
