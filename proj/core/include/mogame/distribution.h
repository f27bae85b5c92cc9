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

#ifndef MOGAME_DISTRIBUTION_H_
#define MOGAME_DISTRIBUTION_H_

#include <vector>

#include "absl/status/statusor.h"
#include "mogame/base.h"
#include "mogame/types.h"

namespace mogame {

inline constexpr double kLawTolerance = 1e-12;

// One membership vector at a point, its probability given x, and the label
// law given (x, w).
struct MembershipBranch {
  GroupMask w = 0;
  double probability = 1.0;
  std::vector<double> label_law;
};

// Finite joint law over (x, w, y).
class TabularDistribution {
 public:
  struct Atom {
    Sample sample;
    double mass = 0.0;
  };

  static absl::StatusOr<TabularDistribution> Create(
      int num_classes, int num_groups, std::vector<double> px,
      std::vector<std::vector<MembershipBranch>> branches);

  // Deterministic memberships taken from `groups`, label law per x.
  static absl::StatusOr<TabularDistribution> FromGroupFamily(
      const GroupFamily& groups, std::vector<double> px,
      std::vector<std::vector<double>> label_law);

  int domain_size() const { return static_cast<int>(px_.size()); }
  int num_classes() const { return num_classes_; }
  int num_groups() const { return num_groups_; }
  double px(DomainPoint x) const { return px_[x.index]; }
  const std::vector<double>& px() const { return px_; }
  const std::vector<MembershipBranch>& branches(DomainPoint x) const {
    return branches_[x.index];
  }

  // Positive-mass atoms in (x, branch, y) order. Masses sum to 1.
  const std::vector<Atom>& atoms() const { return atoms_; }

  // E[g(y)_j | x], marginalizing the membership law.
  double LabelMean(DomainPoint x, int j) const;
  // P(group i in w | x).
  double MembershipProbability(DomainPoint x, int group) const;
  // P(x in S) for a membership bit, i.e. sum_x px(x) P(i in w | x).
  double GroupMass(int group) const;

  Sample Draw(Rng& rng) const;

  // D conditioned on group bit `group` being set. Fails on zero mass.
  absl::StatusOr<TabularDistribution> ConditionOnGroup(int group) const;

 private:
  TabularDistribution() = default;
  void BuildAtoms();

  int num_classes_ = 2;
  int num_groups_ = 1;
  std::vector<double> px_;
  std::vector<std::vector<MembershipBranch>> branches_;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

// Exact weighted sum of f over the joint support.
template <typename F>
double ExactExpectation(const TabularDistribution& dist, F&& f) {
  double total = 0.0;
  for (const auto& atom : dist.atoms()) total += atom.mass * f(atom.sample);
  return total;
}

}  // namespace mogame

#endif  // MOGAME_DISTRIBUTION_H_
