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

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"

namespace mogame {
namespace {

absl::Status CheckLaw(const std::vector<double>& law, std::string_view what) {
  double sum = 0.0;
  for (double p : law) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s has a negative or non-finite entry", std::string(what)));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kLawTolerance) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s sums to %.17g", std::string(what), sum));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<TabularDistribution> TabularDistribution::Create(
    int num_classes, int num_groups, std::vector<double> px,
    std::vector<std::vector<MembershipBranch>> branches) {
  if (num_classes < 2) {
    return absl::InvalidArgumentError("need at least two classes");
  }
  if (num_groups < 1 || num_groups > kMaxGroups) {
    return absl::InvalidArgumentError(
        absl::StrFormat("group count must lie in [1, %d]", kMaxGroups));
  }
  if (px.empty()) return absl::InvalidArgumentError("empty domain");
  if (branches.size() != px.size()) {
    return absl::InvalidArgumentError("one branch list per point is required");
  }
  MOGAME_RETURN_IF_ERROR(CheckLaw(px, "px"));
  const GroupMask allowed =
      num_groups == kMaxGroups ? ~GroupMask{0}
                               : (GroupMask{1} << num_groups) - 1;
  for (size_t x = 0; x < px.size(); ++x) {
    if (branches[x].empty()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("point %d has no membership law", x));
    }
    std::vector<double> membership;
    for (const auto& branch : branches[x]) {
      if ((branch.w & ~allowed) != 0) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "point %d has a membership bit beyond %d groups", x, num_groups));
      }
      if (static_cast<int>(branch.label_law.size()) != num_classes) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "point %d label law has %d entries, expected %d", x,
            branch.label_law.size(), num_classes));
      }
      MOGAME_RETURN_IF_ERROR(CheckLaw(
          branch.label_law, absl::StrFormat("label law at point %d", x)));
      membership.push_back(branch.probability);
    }
    MOGAME_RETURN_IF_ERROR(
        CheckLaw(membership, absl::StrFormat("membership law at point %d", x)));
  }
  TabularDistribution dist;
  dist.num_classes_ = num_classes;
  dist.num_groups_ = num_groups;
  dist.px_ = std::move(px);
  dist.branches_ = std::move(branches);
  dist.BuildAtoms();
  return dist;
}

absl::StatusOr<TabularDistribution> TabularDistribution::FromGroupFamily(
    const GroupFamily& groups, std::vector<double> px,
    std::vector<std::vector<double>> label_law) {
  if (static_cast<int>(px.size()) != groups.domain_size() ||
      label_law.size() != px.size()) {
    return absl::InvalidArgumentError(
        "px and label law must cover the group family's domain");
  }
  if (label_law.empty()) return absl::InvalidArgumentError("empty domain");
  const int num_classes = static_cast<int>(label_law.front().size());
  std::vector<std::vector<MembershipBranch>> branches(px.size());
  for (size_t x = 0; x < px.size(); ++x) {
    branches[x].push_back(
        {groups.MaskOf(DomainPoint{static_cast<int>(x)}), 1.0,
         std::move(label_law[x])});
  }
  return Create(num_classes, groups.size(), std::move(px),
                std::move(branches));
}

void TabularDistribution::BuildAtoms() {
  atoms_.clear();
  cumulative_.clear();
  double running = 0.0;
  for (int x = 0; x < domain_size(); ++x) {
    for (const auto& branch : branches_[x]) {
      for (int y = 0; y < num_classes_; ++y) {
        const double mass = px_[x] * branch.probability * branch.label_law[y];
        if (mass <= 0.0) continue;
        atoms_.push_back({Sample{DomainPoint{x}, branch.w, y}, mass});
        running += mass;
        cumulative_.push_back(running);
      }
    }
  }
}

double TabularDistribution::LabelMean(DomainPoint x, int j) const {
  double mean = 0.0;
  for (const auto& branch : branches_[x.index]) {
    mean += branch.probability * branch.label_law[j];
  }
  return mean;
}

double TabularDistribution::MembershipProbability(DomainPoint x,
                                                  int group) const {
  double p = 0.0;
  for (const auto& branch : branches_[x.index]) {
    if (InGroup(branch.w, group)) p += branch.probability;
  }
  return p;
}

double TabularDistribution::GroupMass(int group) const {
  double mass = 0.0;
  for (int x = 0; x < domain_size(); ++x) {
    mass += px_[x] * MembershipProbability(DomainPoint{x}, group);
  }
  return mass;
}

Sample TabularDistribution::Draw(Rng& rng) const {
  // 53-bit uniform in [0, 1) from one 64-bit word; stable across platforms.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  size_t index = static_cast<size_t>(it - cumulative_.begin());
  if (index >= atoms_.size()) index = atoms_.size() - 1;
  return atoms_[index].sample;
}

absl::StatusOr<TabularDistribution> TabularDistribution::ConditionOnGroup(
    int group) const {
  if (group < 0 || group >= num_groups_) {
    return absl::InvalidArgumentError(
        absl::StrFormat("group %d out of range", group));
  }
  const double mass = GroupMass(group);
  if (!(mass > 0.0)) {
    return absl::FailedPreconditionError(
        absl::StrFormat("group %d has zero mass", group));
  }
  TabularDistribution out;
  out.num_classes_ = num_classes_;
  out.num_groups_ = num_groups_;
  out.px_.resize(px_.size());
  out.branches_.resize(px_.size());
  for (int x = 0; x < domain_size(); ++x) {
    const double member = MembershipProbability(DomainPoint{x}, group);
    out.px_[x] = px_[x] * member / mass;
    for (const auto& branch : branches_[x]) {
      if (!InGroup(branch.w, group)) continue;
      out.branches_[x].push_back(
          {branch.w, branch.probability / member, branch.label_law});
    }
    if (out.branches_[x].empty()) {
      // Outside the group: keep a placeholder law so every point stays
      // well-formed; it carries zero mass.
      out.branches_[x].push_back(branches_[x].front());
      out.branches_[x].back().probability = 1.0;
    }
  }
  out.BuildAtoms();
  return out;
}

}  // namespace mogame
