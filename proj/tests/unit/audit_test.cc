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

#include "mogame/audit.h"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "json.hpp"
#include "support/instances.h"
#include "support/status_macros.h"

namespace mogame {
namespace {

using testing::BinaryPredictor;
using testing::RandomSimplex;

Prediction Row(std::vector<double> row) { return *Prediction::FromRows({row}); }

DeterministicPredictor RandomPredictor(int n, int k, Rng& rng) {
  std::vector<Prediction> table;
  for (int x = 0; x < n; ++x) table.push_back(Row(RandomSimplex(k, rng)));
  return *DeterministicPredictor::Create(table);
}

TEST(AuditMulticalibrationTest, BayesIsZero) {
  const auto inst = testing::RealizableBinary();
  const auto bayes = testing::BayesPredictor(inst.dist);
  EXPECT_NEAR(
      AuditMulticalibration({&bayes, 1}, inst.dist, inst.groups, inst.grid).value,
      0.0, 1e-12);
}

TEST(AuditMulticalibrationTest, ConstantOnCoinFlipNamesTheCell) {
  const auto groups = GroupFamily::Whole(2);
  const auto dist = *TabularDistribution::FromGroupFamily(
      groups, {0.5, 0.5}, {{0.5, 0.5}, {0.5, 0.5}});
  const auto h = BinaryPredictor({1.0, 1.0});
  const auto report =
      AuditMulticalibration({&h, 1}, dist, groups, *LevelGrid::Create(0.5));
  EXPECT_NEAR(report.value, 0.5, 1e-15);
  EXPECT_EQ(report.witness.group, 0);
  EXPECT_EQ(report.witness.bins, (std::vector<int>{2, 0}));
  EXPECT_EQ(report.witness.coord, 0);
  EXPECT_EQ(report.witness.sign, 1);
}

// Audits compute gated sums directly; the objective sets go through
// ForEachActive. The two must agree.
TEST(AuditDualityTest, MulticalibrationMatchesObjectiveMax) {
  Rng rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing::RandomMulticlass(6, 2 + trial % 2, 0.25, rng);
    auto problem =
        *BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid);
    const auto h = RandomPredictor(6, 2 + trial % 2, rng);
    EXPECT_NEAR(
        AuditMulticalibration({&h, 1}, inst.dist, inst.groups, inst.grid).value,
        MaxExactLoss(problem, h).value, 1e-12);
    ASSERT_OK_AND_ASSIGN(auto dispatched, AuditProblem(problem, {&h, 1}));
    EXPECT_NEAR(dispatched.value, MaxExactLoss(problem, h).value, 1e-12);
  }
}

TEST(AuditDualityTest, EnsembleMatchesObjectiveMax) {
  Rng rng(21);
  const auto inst = testing::RandomMulticlass(5, 2, 0.25, rng);
  auto problem = *BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid);
  std::vector<DeterministicPredictor> members;
  for (int m = 0; m < 5; ++m) members.push_back(RandomPredictor(5, 2, rng));
  const auto ensemble = *EnsemblePredictor::Create(members);
  EXPECT_NEAR(
      AuditMulticalibration(members, inst.dist, inst.groups, inst.grid).value,
      MaxExactLoss(problem, ensemble).value, 1e-12);
}

TEST(AuditDualityTest, AgnosticAndConditionalMatchObjectiveMax) {
  Rng rng(22);
  const auto dist = testing::AgnosticLumpingInstance();
  const auto grid = *LevelGrid::Create(0.25);
  auto agnostic = *BuildAgnosticProblem(dist, grid);
  ASSERT_OK_AND_ASSIGN(auto groups, GroupFamily::Create(3, {{0, 1}, {1, 2}}));
  const auto inst = testing::RealizableBinary();
  auto conditional = *BuildConditionalProblem(inst.dist, inst.groups, inst.grid);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = RandomPredictor(3, 2, rng);
    EXPECT_NEAR(AuditAgnostic({&h, 1}, dist, grid).value,
                MaxExactLoss(agnostic, h).value, 1e-12);
    const auto g = RandomPredictor(8, 2, rng);
    ASSERT_OK_AND_ASSIGN(auto report,
                         AuditConditional({&g, 1}, inst.dist, inst.grid));
    EXPECT_NEAR(report.value, MaxExactLoss(conditional, g).value, 1e-12);
    ASSERT_EQ(report.per_distribution.size(), 2u);
    EXPECT_NEAR(report.value,
                std::max(report.per_distribution[0], report.per_distribution[1]),
                1e-15);
  }
}

TEST(AuditConditionalTest, BayesIsZeroEverywhere) {
  const auto inst = testing::RealizableBinary();
  const auto bayes = testing::BayesPredictor(inst.dist);
  ASSERT_OK_AND_ASSIGN(auto report,
                       AuditConditional({&bayes, 1}, inst.dist, inst.grid));
  for (double v : report.per_distribution) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(AuditMomentTest, ExactMomentsAreZero) {
  const auto inst = testing::MomentInstance();
  std::vector<Prediction> table;
  for (int x = 0; x < 4; ++x) {
    const double m = inst.dist.LabelMean(DomainPoint{x}, 0);
    // Degree 1 is clipped at 0 for y = 1, leaving m (1 - m).
    const double v2 = m * (1 - m) * (1 - m) + (1 - m) * m * m;
    table.push_back(*Prediction::FromRows(
        {{m, 1 - m}, {m * (1 - m), 1 - m * (1 - m)}, {v2, 1 - v2}}));
  }
  const auto h = *DeterministicPredictor::Create(table);
  const auto audit = AuditMoment({&h, 1}, inst.dist, inst.groups, inst.grid);
  EXPECT_NEAR(audit.mean.value, 0.0, 1e-12);
  EXPECT_NEAR(audit.moment.value, 0.0, 1e-12);
}

TEST(AuditMomentTest, ZeroSecondMomentOnFairCoin) {
  const auto groups = GroupFamily::Whole(2);
  const auto dist = *TabularDistribution::FromGroupFamily(
      groups, {0.5, 0.5}, {{0.5, 0.5}, {0.5, 0.5}});
  const auto h = DeterministicPredictor::Constant(
      2, *Prediction::FromRows({{0.5, 0.5}, {0.5, 0.5}, {0.0, 1.0}}));
  const auto audit =
      AuditMoment({&h, 1}, dist, groups, *LevelGrid::Create(0.25));
  EXPECT_NEAR(audit.mean.value, 0.0, 1e-12);
  // Both points share one cell of mass 1 with conditional variance 0.25.
  EXPECT_GE(audit.moment.value, 0.25 * 1.0 - 1e-12);
  EXPECT_EQ(audit.moment.witness.degree, 2);
}

TEST(AuditMomentTest, ComponentsMatchObjectiveMax) {
  Rng rng(23);
  const auto inst = testing::MomentInstance();
  auto problem = *BuildMomentProblem(inst.dist, inst.groups, inst.grid, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Prediction> table;
    for (int x = 0; x < 4; ++x) {
      table.push_back(*Prediction::FromRows(
          {RandomSimplex(2, rng), RandomSimplex(2, rng), RandomSimplex(2, rng)}));
    }
    const auto h = *DeterministicPredictor::Create(table);
    const auto audit = AuditMoment({&h, 1}, inst.dist, inst.groups, inst.grid);
    EXPECT_NEAR(audit.mean.value, MaxExactLoss(problem, h, 0).value, 1e-12);
    EXPECT_NEAR(audit.moment.value, MaxExactLoss(problem, h, 1).value, 1e-12);
  }
}

// Independent computation of the covariance slack.
double SlackOracle(const DeterministicPredictor& h,
                   const TabularDistribution& dist, const LevelGrid& grid) {
  std::map<std::vector<int>, std::vector<double>> cells;
  const int u = dist.num_groups(), k = dist.num_classes();
  for (int xi = 0; xi < dist.domain_size(); ++xi) {
    const DomainPoint x{xi};
    auto& cell = cells[BinOf(h.at(x), grid)];
    cell.resize(u * k, 0.0);
    for (int j = 0; j < u; ++j) {
      for (int c = 0; c < k; ++c) {
        double joint = 0.0;
        for (const auto& b : dist.branches(x)) {
          if (InGroup(b.w, j)) joint += b.probability * b.label_law[c];
        }
        cell[j * k + c] += dist.px(x) * (joint - dist.MembershipProbability(x, j) *
                                                     dist.LabelMean(x, c));
      }
    }
  }
  double best = 0.0;
  for (const auto& [bins, values] : cells) {
    for (double v : values) best = std::max(best, std::abs(v));
  }
  return best;
}

TEST(CovarianceSlackTest, MatchesIndependentSum) {
  const auto dist = testing::AgnosticLumpingInstance();
  const auto grid = *LevelGrid::Create(0.25);
  Rng rng(30);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = RandomPredictor(3, 2, rng);
    EXPECT_NEAR(CovarianceSlack(h, dist, grid).value, SlackOracle(h, dist, grid),
                1e-12);
  }
  const auto natural = BinaryPredictor({0.1, 0.5, 0.5});
  EXPECT_NEAR(CovarianceSlack(natural, dist, grid).value,
              SlackOracle(natural, dist, grid), 1e-12);
  EXPECT_GT(CovarianceSlack(natural, dist, grid).value, 0.0);
}

TEST(CovarianceSlackTest, DeterministicMembershipHasNoSlack) {
  const auto inst = testing::RealizableBinary();
  Rng rng(31);
  const auto h = RandomPredictor(8, 2, rng);
  EXPECT_NEAR(CovarianceSlack(h, inst.dist, inst.grid).value, 0.0, 1e-15);
}

TEST(AuditReportTest, JsonCarriesValueWitnessAndSlack) {
  AuditReport report;
  report.value = 0.25;
  report.slack = 0.01;
  report.witness.bins = {1, 3};
  report.witness.sign = -1;
  const auto json = nlohmann::json::parse(AuditReportToJson(report));
  EXPECT_EQ(json["value"], 0.25);
  EXPECT_EQ(json["slack"], 0.01);
  EXPECT_EQ(json["witness"]["bins"], nlohmann::json({1, 3}));
  EXPECT_EQ(json["witness"]["sign"], -1);
}

TEST(BruteForceTest, RealizableInstanceHasZeroOpt) {
  ASSERT_OK_AND_ASSIGN(auto groups, GroupFamily::Create(3, {{0, 1}, {1, 2}}));
  const auto dist = *TabularDistribution::FromGroupFamily(
      groups, {0.3, 0.3, 0.4}, {{0.25, 0.75}, {0.5, 0.5}, {1.0, 0.0}});
  const auto grid = *LevelGrid::Create(0.25);
  auto problem = *BuildMulticalibrationProblem(dist, groups, grid);
  ASSERT_OK_AND_ASSIGN(auto opt, BruteForceOpt(problem, 0.25));
  EXPECT_NEAR(opt.value, 0.0, 1e-12);
  EXPECT_EQ(opt.argmin, testing::BayesPredictor(dist));
  EXPECT_DOUBLE_EQ(opt.slack, 0.125);
  EXPECT_EQ(opt.evaluated, 125);
}

TEST(BruteForceTest, LumpingInstanceGolden) {
  const auto dist = testing::AgnosticLumpingInstance();
  auto problem = *BuildAgnosticProblem(dist, *LevelGrid::Create(0.25));
  ASSERT_OK_AND_ASSIGN(auto opt, BruteForceOpt(problem, 0.25));
  // Lumping every point at 0.25 leaves bit 1 with (1.75 c - 0.35) / 3.
  EXPECT_NEAR(opt.value, 7.0 / 240.0, 1e-12);
  for (int x = 0; x < 3; ++x) {
    EXPECT_DOUBLE_EQ(opt.argmin.at(DomainPoint{x}).at(0, 0), 0.25);
  }
}

TEST(BruteForceTest, RefiningTheGridNeverHurts) {
  Rng rng(40);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = testing::RandomMulticlass(3, 2, 0.25, rng);
    auto problem =
        *BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid);
    ASSERT_OK_AND_ASSIGN(auto whole, BruteForceOpt(problem, 1.0));
    ASSERT_OK_AND_ASSIGN(auto half, BruteForceOpt(problem, 0.5));
    ASSERT_OK_AND_ASSIGN(auto quarter, BruteForceOpt(problem, 0.25));
    EXPECT_LE(half.value, whole.value + 1e-12);
    EXPECT_LE(quarter.value, half.value + 1e-12);
    EXPECT_GE(quarter.value, -1e-9);
  }
}

TEST(BruteForceTest, Caps) {
  const auto inst = testing::RealizableBinary();
  auto problem = *BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid);
  EXPECT_EQ(BruteForceOpt(problem, 0.25).status().code(),
            absl::StatusCode::kResourceExhausted);
  const auto dist = testing::AgnosticLumpingInstance();
  auto small = *BuildAgnosticProblem(dist, *LevelGrid::Create(0.25));
  EXPECT_FALSE(BruteForceOpt(small, 0.1).ok());
  EXPECT_FALSE(BruteForceOpt(small, 0.3).ok());
  BruteForceOptions tight;
  tight.max_predictors = 10;
  EXPECT_EQ(BruteForceOpt(small, 0.25, tight).status().code(),
            absl::StatusCode::kResourceExhausted);
}

}  // namespace
}  // namespace mogame
