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

#include "mogame/distribution.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "support/instances.h"
#include "support/status_macros.h"

namespace mogame {
namespace {

TEST(TabularDistributionTest, PointMassAlwaysDrawsTheSample) {
  ASSERT_OK_AND_ASSIGN(
      TabularDistribution dist,
      TabularDistribution::Create(2, 1, {1.0}, {{{0b1, 1.0, {0.0, 1.0}}}}));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(dist.Draw(rng), (Sample{DomainPoint{0}, 0b1, 1}));
  }
}

TEST(TabularDistributionTest, DrawFrequenciesMatchPx) {
  const GroupFamily whole = GroupFamily::Whole(2);
  ASSERT_OK_AND_ASSIGN(TabularDistribution dist,
                       TabularDistribution::FromGroupFamily(
                           whole, {0.5, 0.5}, {{1.0, 0.0}, {0.0, 1.0}}));
  Rng rng(2);
  const int n = 100000;
  int zero = 0;
  for (int i = 0; i < n; ++i) zero += dist.Draw(rng).x.index == 0;
  // 3-sigma binomial bound is about 0.0047.
  EXPECT_NEAR(static_cast<double>(zero) / n, 0.5, 0.01);
}

TEST(TabularDistributionTest, SameSeedSameStream) {
  const auto inst = testing::RealizableBinary();
  Rng a(11), b(11);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(inst.dist.Draw(a), inst.dist.Draw(b));
  }
}

TEST(TabularDistributionTest, AtomsSumToOne) {
  const auto dist = testing::AgnosticLumpingInstance();
  double total = 0;
  for (const auto& atom : dist.atoms()) total += atom.mass;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(dist.LabelMean(DomainPoint{1}, 0), 0.5, 1e-12);
  EXPECT_NEAR(dist.LabelMean(DomainPoint{2}, 0), 0.25, 1e-12);
  EXPECT_NEAR(dist.MembershipProbability(DomainPoint{2}, 0), 0.75, 1e-12);
  EXPECT_NEAR(dist.GroupMass(0), (1.0 + 0.5 + 0.75) / 3, 1e-12);
}

TEST(TabularDistributionTest, RejectsInvalidLaws) {
  EXPECT_FALSE(
      TabularDistribution::Create(2, 1, {0.6, 0.6},
                                  {{{1, 1.0, {1, 0}}}, {{1, 1.0, {1, 0}}}})
          .ok());
  EXPECT_FALSE(
      TabularDistribution::Create(2, 1, {1.0}, {{{1, 1.0, {0.5, 0.6}}}}).ok());
  EXPECT_FALSE(
      TabularDistribution::Create(2, 1, {1.0}, {{{1, 0.4, {1, 0}}}}).ok());
  EXPECT_FALSE(
      TabularDistribution::Create(2, 1, {1.0}, {{{0b10, 1.0, {1, 0}}}}).ok());
}

TEST(ExactExpectationTest, BasicValues) {
  const GroupFamily whole = GroupFamily::Whole(4);
  ASSERT_OK_AND_ASSIGN(
      TabularDistribution dist,
      TabularDistribution::FromGroupFamily(
          whole, {0.25, 0.25, 0.25, 0.25},
          {{0.5, 0.5}, {1.0, 0.0}, {0.0, 1.0}, {0.3, 0.7}}));
  EXPECT_NEAR(ExactExpectation(dist, [](const Sample&) { return 1.0; }), 1.0,
              1e-12);
  EXPECT_NEAR(ExactExpectation(dist,
                               [](const Sample& z) {
                                 return z.x.index == 0 ? 1.0 : 0.0;
                               }),
              0.25, 1e-12);
}

TEST(ExactExpectationTest, MatchesMonteCarlo) {
  const auto inst = testing::RealizableBinary();
  auto f = [](const Sample& z) { return std::sin(z.x.index + 3.0 * z.y); };
  const double exact = ExactExpectation(inst.dist, f);
  Rng rng(5);
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += f(inst.dist.Draw(rng));
  EXPECT_NEAR(sum / n, exact, 3 * 2.0 * std::sqrt(1.0 / (4.0 * n)));
}

TEST(ExactExpectationTest, IsLinear) {
  Rng rng(9);
  const auto inst = testing::RandomMulticlass(6, 3, 0.25, rng);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> fv(18), gv(18);
    for (double& v : fv) v = u(rng);
    for (double& v : gv) v = u(rng);
    auto f = [&](const Sample& z) { return fv[z.x.index * 3 + z.y]; };
    auto g = [&](const Sample& z) { return gv[z.x.index * 3 + z.y]; };
    const double a = u(rng), b = u(rng);
    EXPECT_NEAR(
        ExactExpectation(inst.dist,
                         [&](const Sample& z) { return a * f(z) + b * g(z); }),
        a * ExactExpectation(inst.dist, f) + b * ExactExpectation(inst.dist, g),
        1e-12);
  }
}

TEST(ConditionOnGroupTest, RenormalizesPx) {
  ASSERT_OK_AND_ASSIGN(GroupFamily groups,
                       GroupFamily::Create(3, {{0}, {0, 1, 2}}));
  ASSERT_OK_AND_ASSIGN(TabularDistribution dist,
                       TabularDistribution::FromGroupFamily(
                           groups, {0.2, 0.5, 0.3},
                           {{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}}));
  ASSERT_OK_AND_ASSIGN(TabularDistribution small, dist.ConditionOnGroup(0));
  EXPECT_NEAR(small.px(DomainPoint{0}), 0.2 / 0.2, 1e-12);
  EXPECT_NEAR(small.px(DomainPoint{1}), 0.0, 1e-12);
  ASSERT_OK_AND_ASSIGN(TabularDistribution whole, dist.ConditionOnGroup(1));
  for (int x = 0; x < 3; ++x) {
    EXPECT_NEAR(whole.px(DomainPoint{x}), dist.px(DomainPoint{x}), 1e-12);
  }
}

TEST(ConditionOnGroupTest, ZeroMassFails) {
  ASSERT_OK_AND_ASSIGN(
      TabularDistribution dist,
      TabularDistribution::Create(2, 2, {0.5, 0.5},
                                  {{{0b01, 1.0, {1, 0}}}, {{0b01, 1.0, {0, 1}}}}));
  EXPECT_FALSE(dist.ConditionOnGroup(1).ok());
}

}  // namespace
}  // namespace mogame
