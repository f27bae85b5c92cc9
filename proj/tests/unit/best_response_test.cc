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

#include "mogame/best_response.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "support/instances.h"
#include "support/status_macros.h"

namespace mogame {
namespace {

// Worst-label q-loss of the mixed strategy at every point.
double WorstLoss(const MultiObjectiveProblem& problem, const MixedPredictor& m,
                 const std::vector<double>& q) {
  const ObjectiveSet& set = problem.objectives();
  double worst = -1.0;
  for (const auto& atom : problem.base_distribution().atoms()) {
    const DomainPoint x = atom.sample.x;
    for (int y = 0; y < problem.classes(); ++y) {
      const Sample z{x, atom.sample.w, y};
      double expected = 0.0;
      for (const auto& a : m.at(x)) {
        set.ForEachActive(a.prediction, z, 0, [&](ObjectiveIndex i, double v) {
          expected += a.probability * q[i] * v;
        });
      }
      worst = std::max(worst, expected);
    }
  }
  return worst;
}

TEST(SimplexGridTest, CountsAndSums) {
  EXPECT_EQ(SimplexGrid(2, 4).size(), 5u);
  EXPECT_EQ(SimplexGrid(3, 4).size(), 15u);
  for (const auto& p : SimplexGrid(3, 5)) {
    double s = 0;
    for (double v : p) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(BestResponseTest, PointMassAvoidsTheGate) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  const size_t n = problem.objectives().size();
  for (ObjectiveIndex i = 0; i < n; i += 13) {
    std::vector<double> q(n, 0.0);
    q[i] = 1.0;
    ASSERT_OK_AND_ASSIGN(auto mixed, BestResponse(problem, q));
    EXPECT_LE(WorstLoss(problem, mixed, q), 1e-12);
  }
}

TEST(BestResponseTest, OppositeSignsCancel) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  const ObjectiveSet& set = problem.objectives();
  LinearObjective o = set.Describe(40);
  const ObjectiveIndex a = *set.IndexOf(o);
  o.sign = -o.sign;
  const ObjectiveIndex b = *set.IndexOf(o);
  std::vector<double> q(set.size(), 0.0);
  q[a] = q[b] = 0.5;
  ASSERT_OK_AND_ASSIGN(auto mixed, BestResponse(problem, q));
  EXPECT_NEAR(WorstLoss(problem, mixed, q), 0.0, 1e-12);
}

TEST(BestResponseTest, GuaranteeOnRandomMixtures) {
  Rng rng(44);
  const auto inst = testing::RandomMulticlass(5, 2, 0.25, rng);
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  const size_t n = problem.objectives().size();
  for (int r : {4, 10, 20}) {
    BestResponseOptions options;
    options.resolution = r;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> q(n, 0.0);
      if (trial % 2 == 0) {
        q = testing::RandomSimplex(static_cast<int>(n), rng);
      } else {
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        for (double m : testing::RandomSimplex(3, rng)) q[pick(rng)] += m;
      }
      ASSERT_OK_AND_ASSIGN(auto mixed, BestResponse(problem, q, options));
      EXPECT_LE(WorstLoss(problem, mixed, q), 1.0 / r + 1e-9);
      for (int x = 0; x < 5; ++x) {
        EXPECT_LE(mixed.value(DomainPoint{x}), 1.0 / r + 1e-9);
      }
    }
  }
}

TEST(BestResponseTest, ThreeClassGuarantee) {
  Rng rng(45);
  const auto inst = testing::RandomMulticlass(3, 3, 0.5, rng);
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  const size_t n = problem.objectives().size();
  BestResponseOptions options;
  options.resolution = 10;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> q(n, 0.0);
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    for (double m : testing::RandomSimplex(4, rng)) q[pick(rng)] += m;
    ASSERT_OK_AND_ASSIGN(auto mixed, BestResponse(problem, q, options));
    EXPECT_LE(WorstLoss(problem, mixed, q), 0.1 + 1e-9);
  }
}

TEST(BestResponseTest, RealizeAndModeStayOnSupport) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  Rng rng(2);
  const auto q = testing::RandomSimplex(
      static_cast<int>(problem.objectives().size()), rng);
  ASSERT_OK_AND_ASSIGN(auto mixed, BestResponse(problem, q));
  const auto h = mixed.Realize(rng);
  const auto mode = mixed.Mode();
  for (int x = 0; x < 8; ++x) {
    const auto& atoms = mixed.at(DomainPoint{x});
    EXPECT_TRUE(std::any_of(atoms.begin(), atoms.end(), [&](const auto& a) {
      return a.prediction == h.at(DomainPoint{x});
    }));
    EXPECT_TRUE(std::any_of(atoms.begin(), atoms.end(), [&](const auto& a) {
      return a.prediction == mode.at(DomainPoint{x});
    }));
  }
}

TEST(BestResponseTest, RejectsBadInput) {
  const auto inst = testing::RealizableBinary();
  ASSERT_OK_AND_ASSIGN(auto problem, BuildMulticalibrationProblem(
                                         inst.dist, inst.groups, inst.grid));
  EXPECT_FALSE(BestResponse(problem, std::vector<double>{1.0}).ok());
  std::vector<double> q(problem.objectives().size(), 0.0);
  q[0] = 1;
  BestResponseOptions tiny;
  tiny.max_grid_points = 3;
  EXPECT_EQ(BestResponse(problem, q, tiny).status().code(),
            absl::StatusCode::kResourceExhausted);
}

}  // namespace
}  // namespace mogame
