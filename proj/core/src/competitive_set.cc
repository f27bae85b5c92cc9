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

#include <limits>

#include "absl/strings/str_format.h"
#include "mogame/objectives.h"

namespace mogame {
namespace {

constexpr double kScale = 0.5;

class CompetitiveSet final : public ObjectiveSet {
 public:
  CompetitiveSet(std::shared_ptr<const ObjectiveSet> base,
                 std::vector<DeterministicPredictor> baselines)
      : base_(std::move(base)), baselines_(std::move(baselines)) {}

  ObjectiveIndex size() const override {
    return base_->size() * baselines_.size();
  }
  const PredictorSignature& signature() const override {
    return base_->signature();
  }
  int num_components() const override { return base_->num_components(); }
  ObjectiveIndex component_begin(int component) const override {
    return base_->component_begin(component) * baselines_.size();
  }
  ObjectiveIndex component_end(int component) const override {
    return base_->component_end(component) * baselines_.size();
  }
  int ComponentOf(ObjectiveIndex index) const override {
    return base_->ComponentOf(index / baselines_.size());
  }
  int active_rows(int component) const override {
    return base_->active_rows(component);
  }
  int num_distributions() const override {
    return base_->num_distributions();
  }
  int DistributionOf(ObjectiveIndex index) const override {
    return base_->DistributionOf(index / baselines_.size());
  }
  bool sign_closed() const override { return false; }
  bool permutation_closed() const override { return false; }
  bool one_hot_targets() const override { return false; }
  double scale() const override { return kScale; }

  LinearObjective Describe(ObjectiveIndex index) const override {
    LinearObjective o = base_->Describe(index / baselines_.size());
    o.base_kind = o.kind;
    o.kind = ObjectiveKind::kCompetitive;
    o.baseline = static_cast<int>(index % baselines_.size());
    return o;
  }

  std::optional<ObjectiveIndex> IndexOf(
      const LinearObjective& o) const override {
    if (o.kind != ObjectiveKind::kCompetitive || o.baseline < 0 ||
        o.baseline >= static_cast<int>(baselines_.size())) {
      return std::nullopt;
    }
    LinearObjective base = o;
    base.kind = o.base_kind;
    base.baseline = -1;
    auto index = base_->IndexOf(base);
    if (!index.has_value()) return std::nullopt;
    return *index * baselines_.size() + o.baseline;
  }

  double Evaluate(ObjectiveIndex index, const Prediction& hx,
                  const Sample& z) const override {
    const ObjectiveIndex base = index / baselines_.size();
    const auto& baseline = baselines_[index % baselines_.size()];
    return kScale * (base_->Evaluate(base, hx, z) -
                     base_->Evaluate(base, baseline.at(z.x), z));
  }

  void ForEachActive(const Prediction& hx, const Sample& z, int d,
                     ActiveVisitor visit) const override {
    const uint64_t n = baselines_.size();
    base_->ForEachActive(hx, z, d, [&](ObjectiveIndex base, double value) {
      for (uint64_t b = 0; b < n; ++b) visit(base * n + b, kScale * value);
    });
    for (uint64_t b = 0; b < n; ++b) {
      base_->ForEachActive(baselines_[b].at(z.x), z, d,
                           [&](ObjectiveIndex base, double value) {
                             visit(base * n + b, -kScale * value);
                           });
    }
  }

  void ForEachGate(const Prediction& hx, DomainPoint x, GroupMask w, int d,
                   GateVisitor visit) const override {
    const uint64_t n = baselines_.size();
    base_->ForEachGate(hx, x, w, d,
                       [&](ObjectiveIndex base, const Activation& a) {
                         Activation scaled = a;
                         scaled.coefficient *= kScale;
                         for (uint64_t b = 0; b < n; ++b) {
                           visit(base * n + b, scaled);
                         }
                       });
  }

  std::optional<Activation> Activate(ObjectiveIndex index,
                                     const Prediction& hx, DomainPoint x,
                                     GroupMask w) const override {
    auto a = base_->Activate(index / baselines_.size(), hx, x, w);
    if (a.has_value()) a->coefficient *= kScale;
    return a;
  }

 private:
  std::shared_ptr<const ObjectiveSet> base_;
  std::vector<DeterministicPredictor> baselines_;
};

}  // namespace

absl::StatusOr<std::shared_ptr<const ObjectiveSet>> AmplifyCompetitive(
    std::shared_ptr<const ObjectiveSet> base,
    std::vector<DeterministicPredictor> baselines) {
  MOGAME_CHECK(!baselines.empty(), "competitive amplification needs baselines");
  const auto& sig = base->signature();
  for (size_t b = 0; b < baselines.size(); ++b) {
    if (baselines[b].rows() != sig.rows ||
        baselines[b].classes() != sig.classes) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "baseline %d does not match the objective signature", b));
    }
  }
  if (base->size() >
      std::numeric_limits<uint64_t>::max() / baselines.size()) {
    return absl::ResourceExhaustedError("amplified set size overflows");
  }
  return std::make_shared<const CompetitiveSet>(std::move(base),
                                                std::move(baselines));
}

}  // namespace mogame
