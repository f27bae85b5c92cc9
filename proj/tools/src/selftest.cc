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

#include "selftest.h"

#include <cmath>
#include <functional>

#include "absl/strings/str_format.h"
#include "mogame/audit.h"
#include "mogame/dynamics.h"
#include "mogame/hedge.h"
#include "mogame/io.h"
#include "mogame/problem.h"

namespace mogame::cli {
namespace {

struct Instance {
  TabularDistribution dist;
  GroupFamily groups;
  LevelGrid grid;
};

Instance Binary(const std::vector<double>& first,
                std::vector<std::vector<int>> members, double lambda) {
  const int n = static_cast<int>(first.size());
  std::vector<std::vector<double>> law;
  for (double p : first) law.push_back({p, 1.0 - p});
  GroupFamily groups = *GroupFamily::Create(n, std::move(members));
  auto dist = TabularDistribution::FromGroupFamily(
      groups, std::vector<double>(n, 1.0 / n), std::move(law));
  return {*std::move(dist), std::move(groups), *LevelGrid::Create(lambda)};
}

Instance Realizable() {
  return Binary({0.0, 0.25, 0.5, 0.75, 1.0, 0.25, 0.5, 0.75},
                {{0, 1, 2, 3, 4}, {3, 4, 5, 6, 7}}, 0.25);
}

DeterministicPredictor Bayes(const TabularDistribution& dist) {
  std::vector<Prediction> table;
  for (int x = 0; x < dist.domain_size(); ++x) {
    std::vector<double> row;
    for (int j = 0; j < dist.num_classes(); ++j) {
      row.push_back(dist.LabelMean(DomainPoint{x}, j));
    }
    table.push_back(*Prediction::Create(1, dist.num_classes(), row));
  }
  return *DeterministicPredictor::Create(std::move(table));
}

DeterministicPredictor RandomBinary(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Prediction> table;
  for (int x = 0; x < n; ++x) {
    const double p = u(rng);
    table.push_back(*Prediction::Create(1, 2, {p, 1.0 - p}));
  }
  return *DeterministicPredictor::Create(std::move(table));
}

using Check = std::function<absl::StatusOr<std::string>()>;

absl::Status Fail(const std::string& message) {
  return absl::InternalError(message);
}

absl::StatusOr<std::string> BayesIsCalibrated() {
  const Instance inst = Realizable();
  const DeterministicPredictor h = Bayes(inst.dist);
  const double v =
      AuditMulticalibration({&h, 1}, inst.dist, inst.groups, inst.grid).value;
  if (v > 1e-12) return Fail(absl::StrFormat("violation %g", v));
  return absl::StrFormat("violation %g", v);
}

absl::StatusOr<std::string> AuditMatchesObjectiveMax() {
  const Instance inst = Realizable();
  MOGAME_ASSIGN_OR_RETURN(
      auto problem,
      BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid));
  Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const DeterministicPredictor h = RandomBinary(8, rng);
    const double audit =
        AuditMulticalibration({&h, 1}, inst.dist, inst.groups, inst.grid).value;
    const double exact = MaxExactLoss(problem, h).value;
    worst = std::max(worst, std::abs(audit - exact));
  }
  if (worst > 1e-12) return Fail(absl::StrFormat("max gap %g", worst));
  return absl::StrFormat("max gap %g over 20 predictors", worst);
}

absl::StatusOr<std::string> ObjectiveIndexRoundTrip() {
  const Instance inst = Realizable();
  MOGAME_ASSIGN_OR_RETURN(
      auto problem,
      BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid));
  const ObjectiveSet& set = problem.objectives();
  for (ObjectiveIndex i = 0; i < set.size(); ++i) {
    const auto back = set.IndexOf(set.Describe(i));
    if (!back.has_value() || *back != i) {
      return Fail(absl::StrFormat("objective %d does not round-trip", i));
    }
  }
  return absl::StrFormat("%d objectives", set.size());
}

absl::StatusOr<std::string> HedgeRegretBound() {
  const int64_t n = 16, T = 2000;
  MOGAME_ASSIGN_OR_RETURN(Hedge hedge, Hedge::Create(n, T));
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> totals(n, 0.0);
  double realized = 0.0;
  for (int64_t t = 0; t < T; ++t) {
    std::vector<double> losses(n);
    for (auto& l : losses) l = u(rng);
    const std::vector<double> p = hedge.Distribution();
    double sum = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      realized += p[i] * losses[i];
      totals[i] += losses[i];
      sum += p[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) return Fail("weights do not sum to 1");
    hedge.Update(losses);
  }
  const double regret =
      realized - *std::min_element(totals.begin(), totals.end());
  // Losses span [-1, 1] and the step size is tuned for [0, 1].
  const double bound = 2.0 * std::sqrt(T * std::log(n));
  if (regret > bound) {
    return Fail(absl::StrFormat("regret %g above %g", regret, bound));
  }
  return absl::StrFormat("regret %.3f <= %.3f", regret, bound);
}

absl::StatusOr<std::string> DynamicsAreDeterministic() {
  const Instance inst = Realizable();
  MOGAME_ASSIGN_OR_RETURN(
      auto problem,
      BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid));
  NrnrConfig config;
  config.rounds = 50;
  std::string first;
  for (int run = 0; run < 2; ++run) {
    Rng rng(9);
    MOGAME_ASSIGN_OR_RETURN(NrnrResult result, RunNrnr(problem, config, rng, 9));
    std::string lines = result.transcript.ToJsonLines("{}");
    if (run == 0) {
      first = std::move(lines);
    } else if (lines != first) {
      return Fail("transcripts differ");
    }
  }
  return std::string("identical transcripts");
}

absl::StatusOr<std::string> RealizableBruteForceOpt() {
  const Instance inst = Binary({0.0, 0.5, 1.0}, {{0, 1}, {1, 2}}, 0.25);
  MOGAME_ASSIGN_OR_RETURN(
      auto problem,
      BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid));
  MOGAME_ASSIGN_OR_RETURN(BruteForceResult opt, BruteForceOpt(problem, 0.25));
  if (opt.value > 1e-12) return Fail(absl::StrFormat("OPT %g", opt.value));
  return absl::StrFormat("OPT %g over %d predictors", opt.value, opt.evaluated);
}

absl::StatusOr<std::string> NrnrReachesTarget() {
  const Instance inst = Realizable();
  MOGAME_ASSIGN_OR_RETURN(
      auto problem,
      BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid));
  NrnrConfig config;
  config.epsilon = 0.1;
  Rng rng(7);
  MOGAME_ASSIGN_OR_RETURN(NrnrResult run, RunNrnr(problem, config, rng, 7));
  const double v = AuditMulticalibration(run.ensemble.members(), inst.dist,
                                         inst.groups, inst.grid)
                       .value;
  if (v > 0.2) return Fail(absl::StrFormat("audited loss %g", v));
  return absl::StrFormat("audited loss %.4f after %d rounds", v,
                         run.ensemble.size());
}

absl::StatusOr<std::string> DistributionRoundTrip() {
  const Instance inst = Realizable();
  MOGAME_ASSIGN_OR_RETURN(LoadedDistribution back,
                          ParseDistribution(SerializeDistribution(inst.dist)));
  for (int x = 0; x < inst.dist.domain_size(); ++x) {
    const DomainPoint p{x};
    if (back.distribution.px(p) != inst.dist.px(p) ||
        back.distribution.LabelMean(p, 0) != inst.dist.LabelMean(p, 0)) {
      return Fail(absl::StrFormat("point %d changed", x));
    }
  }
  return std::string("exact");
}

}  // namespace

std::vector<SelftestCheck> RunSelftest() {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"bayes_predictor_is_calibrated", BayesIsCalibrated},
      {"audit_matches_objective_max", AuditMatchesObjectiveMax},
      {"objective_index_round_trip", ObjectiveIndexRoundTrip},
      {"hedge_regret_bound", HedgeRegretBound},
      {"dynamics_are_deterministic", DynamicsAreDeterministic},
      {"realizable_brute_force_opt", RealizableBruteForceOpt},
      {"nrnr_reaches_target", NrnrReachesTarget},
      {"distribution_round_trip", DistributionRoundTrip},
  };
  std::vector<SelftestCheck> out;
  for (const auto& [name, check] : checks) {
    auto result = check();
    out.push_back({name, result.ok(),
                   result.ok() ? *result : std::string(result.status().message())});
  }
  return out;
}

}  // namespace mogame::cli
