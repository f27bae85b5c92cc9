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

#include "mogame/types.h"

#include <cmath>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "support/status_macros.h"

namespace mogame {
namespace {

using ::testing::ElementsAre;

TEST(LevelGridTest, CountsValues) {
  ASSERT_OK_AND_ASSIGN(LevelGrid quarter, LevelGrid::Create(0.25));
  EXPECT_EQ(quarter.num_values(), 5);
  ASSERT_OK_AND_ASSIGN(LevelGrid third, LevelGrid::Create(0.3));
  EXPECT_EQ(third.num_values(), 5);
}

TEST(LevelGridTest, RejectsBadStep) {
  EXPECT_FALSE(LevelGrid::Create(0.0).ok());
  EXPECT_FALSE(LevelGrid::Create(-0.1).ok());
  EXPECT_FALSE(LevelGrid::Create(1.5).ok());
}

TEST(LevelGridTest, BinsHalfOpenClosedAtOne) {
  ASSERT_OK_AND_ASSIGN(LevelGrid grid, LevelGrid::Create(0.25));
  ASSERT_OK_AND_ASSIGN(Prediction p, Prediction::FromRows({{0.3, 0.7}}));
  EXPECT_THAT(BinOf(p, grid), ElementsAre(1, 2));

  ASSERT_OK_AND_ASSIGN(LevelGrid half, LevelGrid::Create(0.5));
  ASSERT_OK_AND_ASSIGN(Prediction top, Prediction::FromRows({{1.0, 0.0}}));
  EXPECT_THAT(BinOf(top, half), ElementsAre(2, 0));
}

TEST(LevelGridTest, GridPointsLandInTheirOwnBin) {
  for (double lambda : {0.5, 0.25, 0.2, 0.1, 0.05}) {
    ASSERT_OK_AND_ASSIGN(LevelGrid grid, LevelGrid::Create(lambda));
    for (int b = 0; b < grid.num_values(); ++b) {
      const double c = std::min(1.0, grid.value(b));
      EXPECT_EQ(grid.BinOf(c), std::min(b, grid.num_values() - 1))
          << "lambda " << lambda << " bin " << b;
      // Re-binning the left endpoint of a bin is a fixed point.
      EXPECT_EQ(grid.BinOf(grid.value(grid.BinOf(c))), grid.BinOf(c));
    }
  }
}

TEST(PredictionTest, RowsSumToOne) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> rows(2, std::vector<double>(4));
    for (auto& row : rows) {
      double s = 0;
      for (double& v : row) s += (v = u(rng));
      for (double& v : row) v /= s;
    }
    ASSERT_OK_AND_ASSIGN(Prediction p, Prediction::FromRows(rows));
    for (int r = 0; r < p.rows(); ++r) {
      double s = 0;
      for (double v : p.row(r)) s += v;
      EXPECT_NEAR(s, 1.0, kRowSumTolerance);
    }
  }
  const Prediction uniform = Prediction::Uniform(3, 4);
  for (int r = 0; r < 3; ++r) EXPECT_DOUBLE_EQ(uniform.at(r, 2), 0.25);
}

TEST(PredictionTest, RejectsInvalidRows) {
  EXPECT_FALSE(Prediction::FromRows({{0.5, 0.6}}).ok());
  EXPECT_FALSE(Prediction::FromRows({{1.2, -0.2}}).ok());
  EXPECT_FALSE(Prediction::Create(1, 2, {0.5}).ok());
  EXPECT_FALSE(Prediction::FromRows({}).ok());
}

TEST(PredictionTest, WithRowReplacesOneRow) {
  const Prediction p = Prediction::Uniform(2, 2);
  const std::vector<double> row = {0.9, 0.1};
  const Prediction q = p.WithRow(1, row);
  EXPECT_DOUBLE_EQ(q.at(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(q.at(1, 0), 0.9);
}

TEST(GroupFamilyTest, MasksMatchMembers) {
  ASSERT_OK_AND_ASSIGN(GroupFamily g, GroupFamily::Create(4, {{0, 1}, {1, 3}}));
  EXPECT_EQ(g.MaskOf(DomainPoint{0}), 0b01u);
  EXPECT_EQ(g.MaskOf(DomainPoint{1}), 0b11u);
  EXPECT_EQ(g.MaskOf(DomainPoint{2}), 0b00u);
  EXPECT_TRUE(g.Contains(1, DomainPoint{3}));
  EXPECT_EQ(GroupFamily::Whole(3).members(0).size(), 3u);
}

TEST(GroupFamilyTest, RejectsEmptyAndOutOfRange) {
  EXPECT_FALSE(GroupFamily::Create(3, {{}}).ok());
  EXPECT_FALSE(GroupFamily::Create(3, {{0, 3}}).ok());
  std::vector<std::vector<int>> many(65, std::vector<int>{0});
  EXPECT_FALSE(GroupFamily::Create(1, many).ok());
}

TEST(SignatureTest, FirstRowOfComponents) {
  PredictorSignature sig{2, 3, {1, 2}};
  EXPECT_EQ(sig.first_row(0), 0);
  EXPECT_EQ(sig.first_row(1), 1);
}

}  // namespace
}  // namespace mogame
