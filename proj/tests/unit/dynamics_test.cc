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

#include "mogame/dynamics.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "mogame/audit.h"
#include "support/instances.h"
#include "support/status_macros.h"

namespace mogame {
namespace {

Prediction Row(std::vector<double> row) { return *Prediction::FromRows({row}); }

double Audit(const testing::GroupedInstance& inst,
             const DeterministicPredictor& h) {
  return AuditMulticalibration({&h, 1}, inst.dist, inst.groups, inst.grid)
      .value;
}

TEST(DefaultRoundsTest, Formulas) {
  EXPECT_EQ(DefaultNrnrRounds(0.1, 0.05, 200),
            static_cast<int64_t>(std::ceil(1600.0 * std::log(400 / 0.05))));
  EXPECT_EQ(DefaultNrbrRounds(0.1, 2, 1),
            static_cast<int64_t>(std::ceil(1600.0 * std::log(2.0))));
  EXPECT_EQ(DefaultNrbrRounds(0.1, 4, 2),
            static_cast<int64_t>(std::ceil(3200.0 * std::log(4.0))));
  EXPECT_EQ(FindSampleSize(0.1, 0.05, 10, 200),
            static_cast<int64_t>(std::ceil(800.0 * std::log(4.0 * 10 * 200 / 0.05))));
}

TEST(NrnrTest, RealizableEnsembleIsNearlyCalibrated) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  NrnrConfig config;
  config.epsilon = 0.1;
  Rng rng(3);
  ASSERT_OK_AND_ASSIGN(auto run, RunNrnr(problem, config, rng, 3));
  EXPECT_EQ(run.learner, LearnerKind::kBestResponse);
  EXPECT_EQ(run.ensemble.size(),
            DefaultNrnrRounds(0.1, 0.05, problem.objectives().size()));
  EXPECT_EQ(run.transcript.size(), run.ensemble.size());
  EXPECT_EQ(run.counters.samples_drawn, run.ensemble.size());
  EXPECT_EQ(run.counters.oracle_calls, 0);
  EXPECT_LE(AuditMulticalibration(run.ensemble.members(), inst.dist,
                                  inst.groups, inst.grid)
                .value,
            0.2);
}

TEST(NrnrTest, SingleRoundIsBestResponseToUniformPrior) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  NrnrConfig config;
  config.rounds = 1;
  Rng rng(4);
  ASSERT_OK_AND_ASSIGN(auto run, RunNrnr(problem, config, rng));
  ASSERT_EQ(run.ensemble.size(), 1);
  const std::vector<double> uniform(problem.objectives().size(),
                                    1.0 / problem.objectives().size());
  ASSERT_OK_AND_ASSIGN(auto mixed, BestResponse(problem, uniform));
  const auto& h = run.ensemble.members().front();
  for (int x = 0; x < 8; ++x) {
    bool on_support = false;
    for (const auto& a : mixed.at(DomainPoint{x})) {
      on_support |= a.prediction == h.at(DomainPoint{x});
    }
    EXPECT_TRUE(on_support);
  }
}

TEST(NrnrTest, SameSeedSameRun) {
  Rng inst_rng(5);
  const auto inst = testing::RandomMulticlass(5, 4, 0.5, inst_rng);
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  NrnrConfig config;
  config.rounds = 200;
  Rng a(9), b(9);
  ASSERT_OK_AND_ASSIGN(auto ra, RunNrnr(problem, config, a, 9));
  ASSERT_OK_AND_ASSIGN(auto rb, RunNrnr(problem, config, b, 9));
  EXPECT_EQ(ra.learner, LearnerKind::kLazy);
  EXPECT_EQ(ra.ensemble.members(), rb.ensemble.members());
  EXPECT_EQ(ra.transcript.ToJsonLines("{}", true),
            rb.transcript.ToJsonLines("{}", true));
}

TEST(NrnrTest, HedgeOverClassNeedsAClass) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  NrnrConfig config;
  config.rounds = 5;
  config.learner = LearnerKind::kHedgeOverClass;
  Rng rng(1);
  EXPECT_FALSE(RunNrnr(problem, config, rng).ok());
  config.hypothesis_class = {testing::BayesPredictor(inst.dist)};
  EXPECT_OK(RunNrnr(problem, config, rng));
  config.epsilon = 0.0;
  EXPECT_FALSE(RunNrnr(problem, config, rng).ok());
}

TEST(NrbrTest, SomeIterateIsEpsilonOptimal) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  NrbrConfig config;
  config.epsilon = 0.1;
  Rng rng(2);
  ASSERT_OK_AND_ASSIGN(auto run, RunNrbr(problem, config, rng, 2));
  EXPECT_EQ(static_cast<int64_t>(run.iterates.size()),
            DefaultNrbrRounds(0.1, 2, 1));
  EXPECT_EQ(run.counters.oracle_calls,
            static_cast<int64_t>(run.iterates.size()));
  double best = 1.0;
  for (const auto& h : run.iterates) best = std::min(best, Audit(inst, h));
  EXPECT_LE(best, 0.1);
}

TEST(NrbrTest, WeakOracleOnCalibratedStartNeverFires) {
  const auto groups = GroupFamily::Whole(3);
  const auto dist = *TabularDistribution::FromGroupFamily(
      groups, {0.2, 0.3, 0.5}, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
  const testing::GroupedInstance inst{dist, groups, *LevelGrid::Create(0.25)};
  ASSERT_OK_AND_ASSIGN(auto problem,
                       BuildMulticalibrationProblem(dist, groups, inst.grid));
  NrbrConfig config;
  config.rounds = 20;
  config.oracle.mode = OracleMode::kWeak;
  config.oracle.reference = 0.0;
  Rng rng(1);
  ASSERT_OK_AND_ASSIGN(auto run, RunNrbr(problem, config, rng));
  for (const auto& round : run.transcript.rounds) {
    EXPECT_TRUE(round.choices[0].below_threshold);
  }
  EXPECT_LE(Audit(inst, run.iterates.front()), 0.1);
}

TEST(NrbrTest, WeakOracleRunReachesEpsilon) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  NrbrConfig config;
  config.epsilon = 0.1;
  config.oracle.mode = OracleMode::kWeak;
  config.oracle.epsilon = 0.05;
  config.oracle.reference = 0.0;
  Rng rng(6);
  ASSERT_OK_AND_ASSIGN(auto run, RunNrbr(problem, config, rng));
  double best = 1.0;
  for (const auto& h : run.iterates) best = std::min(best, Audit(inst, h));
  EXPECT_LE(best, 0.1);
}

TEST(NrbrTest, MomentProblemUpdatesBothComponents) {
  const auto inst = testing::MomentInstance();
  ASSERT_OK_AND_ASSIGN(auto problem,
                       BuildMomentProblem(inst.dist, inst.groups, inst.grid, 2));
  NrbrConfig config;
  config.epsilon = 0.15;
  config.rounds = 50;
  Rng rng(3);
  ASSERT_OK_AND_ASSIGN(auto run, RunNrbr(problem, config, rng));
  EXPECT_EQ(run.counters.oracle_calls, 100);
  for (const auto& round : run.transcript.rounds) {
    ASSERT_EQ(round.choices.size(), 2u);
    EXPECT_EQ(problem.objectives().ComponentOf(*round.choices[1].objective), 1);
  }
  EXPECT_EQ(run.iterates.front().rows(), 3);
}

TEST(FindTest, SoleCandidate) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  const std::vector<DeterministicPredictor> one = {
      DeterministicPredictor::Constant(8, Row({0.5, 0.5}))};
  Rng rng(1);
  ASSERT_OK_AND_ASSIGN(auto found,
                       Find(problem, one, 0.1, 0.05, FindMode::kSamples, rng));
  EXPECT_EQ(found.index, 0);
  EXPECT_FALSE(Find(problem, {}, 0.1, 0.05, FindMode::kSamples, rng).ok());
}

TEST(FindTest, PrefersTheCalibratedCandidate) {
  const auto groups = GroupFamily::Whole(2);
  const testing::GroupedInstance inst{
      *TabularDistribution::FromGroupFamily(groups, {0.5, 0.5},
                                            {{0.5, 0.5}, {0.5, 0.5}}),
      groups, *LevelGrid::Create(0.5)};
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  const std::vector<DeterministicPredictor> candidates = {
      DeterministicPredictor::Constant(2, Row({1.0, 0.0})),
      DeterministicPredictor::Constant(2, Row({0.5, 0.5}))};
  ASSERT_NEAR(Audit(inst, candidates[0]), 0.5, 1e-12);
  ASSERT_NEAR(Audit(inst, candidates[1]), 0.0, 1e-12);
  int good = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    ASSERT_OK_AND_ASSIGN(auto found, Find(problem, candidates, 0.1, 0.05,
                                          FindMode::kSamples, rng));
    good += found.index == 1;
    EXPECT_EQ(found.samples_drawn,
              FindSampleSize(0.1, 0.05, 2, problem.objectives().size()));
  }
  EXPECT_GE(good, 95);
}

TEST(FindTest, ExactOracleModeReturnsTrueArgmin) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  std::vector<DeterministicPredictor> candidates;
  for (double p : {1.0, 0.8, 0.55, 0.3}) {
    candidates.push_back(DeterministicPredictor::Constant(8, Row({p, 1 - p})));
  }
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    if (MaxExactLoss(problem, candidates[i]).value <
        MaxExactLoss(problem, candidates[best]).value) {
      best = i;
    }
  }
  Rng rng(1);
  ASSERT_OK_AND_ASSIGN(auto found, Find(problem, candidates, 0.1, 0.05,
                                        FindMode::kOracle, rng));
  EXPECT_EQ(found.index, static_cast<int64_t>(best));
  EXPECT_EQ(found.samples_drawn, 0);
  EXPECT_GE(found.oracle_calls, static_cast<int64_t>(candidates.size()));
}

TEST(MajorityRoundTest, IdenticalMembers) {
  const auto h = DeterministicPredictor::Constant(3, Row({0.3, 0.7}));
  const auto ensemble = *EnsemblePredictor::Create({h, h, h});
  EXPECT_EQ(MajorityRound(ensemble, *LevelGrid::Create(0.25)), h);
}

TEST(MajorityRoundTest, ModalBinThenMean) {
  const auto a = DeterministicPredictor::Constant(1, Row({0.26, 0.74}));
  const auto b = DeterministicPredictor::Constant(1, Row({0.9, 0.1}));
  const auto ensemble = *EnsemblePredictor::Create({a, a, b});
  const auto rounded = MajorityRound(ensemble, *LevelGrid::Create(0.25));
  EXPECT_NEAR(rounded.at(DomainPoint{0}).at(0, 0), 0.26, 1e-12);
}

TEST(MajorityRoundTest, OutputLiesInModalBin) {
  Rng rng(14);
  const auto grid = *LevelGrid::Create(0.25);
  std::vector<DeterministicPredictor> members;
  for (int m = 0; m < 9; ++m) {
    std::vector<Prediction> table;
    for (int x = 0; x < 6; ++x) {
      table.push_back(Row(testing::RandomSimplex(3, rng)));
    }
    members.push_back(*DeterministicPredictor::Create(table));
  }
  const auto ensemble = *EnsemblePredictor::Create(members);
  const auto rounded = MajorityRound(ensemble, grid);
  for (int x = 0; x < 6; ++x) {
    std::map<std::vector<int>, int> counts;
    for (const auto& m : members) ++counts[BinOf(m.at(DomainPoint{x}), grid)];
    std::vector<int> modal;
    int most = 0;
    for (const auto& [bins, c] : counts) {
      if (c > most) {
        most = c;
        modal = bins;
      }
    }
    // Renormalization can nudge a coordinate across an edge only by
    // rounding; the mean of same-bin members stays in the bin.
    EXPECT_EQ(BinOf(rounded.at(DomainPoint{x}), grid), modal);
  }
}

TEST(TranscriptTest, JsonLinesHaveOneRecordPerRound) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  NrbrConfig config;
  config.rounds = 7;
  Rng rng(1);
  ASSERT_OK_AND_ASSIGN(auto run, RunNrbr(problem, config, rng, 1));
  std::istringstream in(run.transcript.ToJsonLines(R"({"note": 1})"));
  std::string line;
  int records = 0;
  nlohmann::json last;
  while (std::getline(in, line)) {
    last = nlohmann::json::parse(line);
    ++records;
  }
  EXPECT_EQ(records, 8);
  EXPECT_EQ(last["summary"]["rounds"], 7);
  EXPECT_EQ(last["summary"]["note"], 1);
  EXPECT_EQ(last["summary"]["dynamics"], "nrbr");
}

}  // namespace
}  // namespace mogame
