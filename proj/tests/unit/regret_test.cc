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

#include "mogame/regret.h"

#include <cmath>

#include "gtest/gtest.h"
#include "mogame/dynamics.h"
#include "support/instances.h"
#include "support/status_macros.h"

namespace mogame {
namespace {

class RegretTest : public ::testing::Test {
 protected:
  RegretTest()
      : inst_(testing::RealizableBinary()),
        problem_(*BuildMulticalibrationProblem(inst_.dist, inst_.groups,
                                               inst_.grid)) {}

  NrnrResult Nrnr(int64_t rounds, uint64_t seed, bool mixtures = true) {
    NrnrConfig config;
    config.rounds = rounds;
    config.record_mixtures = mixtures;
    Rng rng(seed);
    return *RunNrnr(problem_, config, rng, seed);
  }

  NrbrResult Nrbr(int64_t rounds, uint64_t seed) {
    NrbrConfig config;
    config.rounds = rounds;
    Rng rng(seed);
    return *RunNrbr(problem_, config, rng, seed);
  }

  testing::GroupedInstance inst_;
  MultiObjectiveProblem problem_;
};

// Exact adversary regret plus exact learner weak regret telescopes to
// T times the ensemble's loss above the reference.
TEST_F(RegretTest, NrnrRegretsAddUpToEnsembleGap) {
  const auto run = Nrnr(500, 4);
  RegretQuery adversary;
  adversary.source = RegretSource::kExact;
  ASSERT_OK_AND_ASSIGN(auto adv, ComputeRegret(problem_, run.transcript, adversary));
  RegretQuery learner;
  learner.player = RegretPlayer::kLearner;
  learner.source = RegretSource::kExact;
  learner.kind = RegretKind::kWeak;
  learner.reference = 0.0;
  ASSERT_OK_AND_ASSIGN(auto weak, ComputeRegret(problem_, run.transcript, learner));
  const double T = 500;
  const double ensemble = MaxExactLoss(problem_, run.ensemble).value;
  EXPECT_NEAR(adv.regret + weak.regret, T * ensemble, 1e-8);
  EXPECT_GE(adv.regret / T + weak.regret / T, ensemble - 0.0 - 1e-12);
  EXPECT_EQ(adv.rounds, 500);
}

TEST_F(RegretTest, SingleRoundAdversaryRegret) {
  const auto run = Nrnr(1, 2);
  RegretQuery query;
  query.source = RegretSource::kExact;
  ASSERT_OK_AND_ASSIGN(auto value, ComputeRegret(problem_, run.transcript, query));
  const auto& h = run.ensemble.members().front();
  const size_t n = problem_.objectives().size();
  double mean = 0.0;
  for (ObjectiveIndex i = 0; i < n; ++i) mean += ExactLoss(problem_, i, h) / n;
  EXPECT_NEAR(value.realized, mean, 1e-12);
  EXPECT_NEAR(value.regret, MaxExactLoss(problem_, h).value - mean, 1e-12);
}

TEST_F(RegretTest, AdversaryEmpiricalRegretWithinHedgeBound) {
  const int64_t T = 2000;
  const auto run = Nrnr(T, 8);
  RegretQuery query;
  ASSERT_OK_AND_ASSIGN(auto value, ComputeRegret(problem_, run.transcript, query));
  EXPECT_LE(value.regret,
            2 * std::sqrt(T * std::log(problem_.objectives().size())));
}

TEST_F(RegretTest, NrbrLearnerRegretAndSelectionChain) {
  const int64_t T = 400;
  const auto run = Nrbr(T, 3);
  RegretQuery standard;
  standard.player = RegretPlayer::kLearner;
  standard.source = RegretSource::kExact;
  ASSERT_OK_AND_ASSIGN(auto regret, ComputeRegret(problem_, run.transcript, standard));
  // The Bayes predictor lies on the 0.05 grid and zeroes every objective,
  // so the best fixed grid predictor is at most 0 in hindsight.
  EXPECT_LE(regret.comparator, 1e-9);
  EXPECT_NEAR(regret.regret, regret.realized - regret.comparator, 1e-12);

  RegretQuery weak = standard;
  weak.kind = RegretKind::kWeak;
  weak.reference = 0.0;
  ASSERT_OK_AND_ASSIGN(auto wreg, ComputeRegret(problem_, run.transcript, weak));
  double best = 1.0;
  for (const auto& h : run.iterates) {
    best = std::min(best, MaxExactLoss(problem_, h).value);
  }
  EXPECT_LE(best, 0.0 + wreg.regret / T + 1e-12);
}

TEST_F(RegretTest, ComparatorsReplaceTheGrid) {
  const auto run = Nrbr(50, 1);
  const std::vector<DeterministicPredictor> bayes = {
      testing::BayesPredictor(inst_.dist)};
  RegretQuery query;
  query.player = RegretPlayer::kLearner;
  query.source = RegretSource::kExact;
  query.comparators = bayes;
  ASSERT_OK_AND_ASSIGN(auto value, ComputeRegret(problem_, run.transcript, query));
  EXPECT_NEAR(value.comparator, 0.0, 1e-12);
  EXPECT_NEAR(value.regret, value.realized, 1e-12);
}

TEST_F(RegretTest, Preconditions) {
  const auto nrbr = Nrbr(5, 1);
  RegretQuery empirical;
  EXPECT_EQ(ComputeRegret(problem_, nrbr.transcript, empirical).status().code(),
            absl::StatusCode::kFailedPrecondition);
  RegretQuery weak;
  weak.source = RegretSource::kExact;
  weak.kind = RegretKind::kWeak;
  EXPECT_EQ(ComputeRegret(problem_, nrbr.transcript, weak).status().code(),
            absl::StatusCode::kInvalidArgument);
  const auto bare = Nrnr(5, 1, /*mixtures=*/false);
  RegretQuery exact;
  exact.source = RegretSource::kExact;
  EXPECT_EQ(ComputeRegret(problem_, bare.transcript, exact).status().code(),
            absl::StatusCode::kFailedPrecondition);
  RegretQuery component;
  component.component = 3;
  EXPECT_FALSE(ComputeRegret(problem_, bare.transcript, component).ok());
}

}  // namespace
}  // namespace mogame
