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

#include <algorithm>

#include "absl/strings/str_format.h"
#include "mogame/objectives.h"

namespace mogame {
namespace {

constexpr int kMeanComponent = 0;
constexpr int kMomentComponent = 1;

class MomentSet final : public ObjectiveSet {
 public:
  MomentSet(int num_groups, const LevelGrid& grid, int moments,
            std::vector<int> degrees, bool sign_closed)
      : num_groups_(num_groups),
        grid_(grid),
        degrees_(std::move(degrees)),
        degree_slot_(moments + 1, -1),
        num_signs_(sign_closed ? 2 : 1) {
    signature_.classes = 2;
    signature_.rows = 1 + moments;
    signature_.component_rows = {1, moments};
    for (size_t i = 0; i < degrees_.size(); ++i) degree_slot_[degrees_[i]] = i;
    const uint64_t nv = grid_.num_values();
    half_ = static_cast<uint64_t>(num_groups_) * nv * nv * degrees_.size() *
            2 * num_signs_;
  }

  ObjectiveIndex size() const override { return 2 * half_; }
  const PredictorSignature& signature() const override { return signature_; }
  int num_components() const override { return 2; }
  ObjectiveIndex component_begin(int component) const override {
    return component == kMeanComponent ? 0 : half_;
  }
  ObjectiveIndex component_end(int component) const override {
    return component == kMeanComponent ? half_ : 2 * half_;
  }
  int ComponentOf(ObjectiveIndex index) const override {
    return index < half_ ? kMeanComponent : kMomentComponent;
  }
  int active_rows(int component) const override {
    return component == kMeanComponent ? 1
                                       : static_cast<int>(degrees_.size());
  }
  bool sign_closed() const override { return num_signs_ == 2; }
  bool permutation_closed() const override { return true; }
  bool one_hot_targets() const override { return false; }

  LinearObjective Describe(ObjectiveIndex index) const override {
    MOGAME_CHECK(index < size(), "objective index out of range");
    const Fields f = Decode(index);
    LinearObjective o;
    o.kind = f.component == kMeanComponent ? ObjectiveKind::kMean
                                           : ObjectiveKind::kMoment;
    o.base_kind = o.kind;
    o.component = f.component;
    o.group = f.group;
    o.bins = {f.mean_bin, f.moment_bin};
    o.coord = f.coord;
    o.sign = f.sign_slot == 0 ? 1 : -1;
    o.moment_degree = degrees_[f.degree_slot];
    return o;
  }

  std::optional<ObjectiveIndex> IndexOf(
      const LinearObjective& o) const override {
    const int component = o.kind == ObjectiveKind::kMean     ? kMeanComponent
                          : o.kind == ObjectiveKind::kMoment ? kMomentComponent
                                                             : -1;
    if (component < 0 || o.component != component || o.group < 0 ||
        o.group >= num_groups_ || o.bins.size() != 2 || o.coord < 0 ||
        o.coord > 1 || o.moment_degree < 1 ||
        o.moment_degree >= static_cast<int>(degree_slot_.size()) ||
        degree_slot_[o.moment_degree] < 0 || o.baseline != -1) {
      return std::nullopt;
    }
    for (int b : o.bins) {
      if (b < 0 || b >= grid_.num_values()) return std::nullopt;
    }
    if (o.sign != 1 && !(o.sign == -1 && num_signs_ == 2)) return std::nullopt;
    return Encode(component, o.group, o.bins[0], o.bins[1],
                  degree_slot_[o.moment_degree], o.coord, o.sign > 0 ? 0 : 1);
  }

  double Evaluate(ObjectiveIndex index, const Prediction& hx,
                  const Sample& z) const override {
    CheckSignature(hx);
    const Fields f = Decode(index);
    const int degree = degrees_[f.degree_slot];
    if (!InGroup(z.w, f.group) ||
        grid_.BinOf(hx.at(0, 0)) != f.mean_bin ||
        grid_.BinOf(hx.at(degree, 0)) != f.moment_bin) {
      return 0.0;
    }
    const double value = Residual(f.component, degree, f.coord, hx, z.y);
    return f.sign_slot == 0 ? value : -value;
  }

  void ForEachActive(const Prediction& hx, const Sample& z, int,
                     ActiveVisitor visit) const override {
    CheckSignature(hx);
    const int mean_bin = grid_.BinOf(hx.at(0, 0));
    ForEachGroup(z.w, [&](int group) {
      for (size_t slot = 0; slot < degrees_.size(); ++slot) {
        const int degree = degrees_[slot];
        const int moment_bin = grid_.BinOf(hx.at(degree, 0));
        for (int component = 0; component < 2; ++component) {
          for (int i = 0; i < 2; ++i) {
            const double value = Residual(component, degree, i, hx, z.y);
            for (int s = 0; s < num_signs_; ++s) {
              visit(Encode(component, group, mean_bin, moment_bin, slot, i, s),
                    s == 0 ? value : -value);
            }
          }
        }
      }
    });
  }

  void ForEachGate(const Prediction& hx, DomainPoint, GroupMask w, int,
                   GateVisitor visit) const override {
    CheckSignature(hx);
    const int mean_bin = grid_.BinOf(hx.at(0, 0));
    ForEachGroup(w, [&](int group) {
      for (size_t slot = 0; slot < degrees_.size(); ++slot) {
        const int degree = degrees_[slot];
        const int moment_bin = grid_.BinOf(hx.at(degree, 0));
        for (int component = 0; component < 2; ++component) {
          const int row = component == kMeanComponent ? 0 : degree;
          for (int i = 0; i < 2; ++i) {
            for (int s = 0; s < num_signs_; ++s) {
              visit(Encode(component, group, mean_bin, moment_bin, slot, i, s),
                    Activation{row, i, s == 0 ? 1.0 : -1.0});
            }
          }
        }
      }
    });
  }

  std::optional<Activation> Activate(ObjectiveIndex index,
                                     const Prediction& hx, DomainPoint,
                                     GroupMask w) const override {
    CheckSignature(hx);
    const Fields f = Decode(index);
    const int degree = degrees_[f.degree_slot];
    if (!InGroup(w, f.group) || grid_.BinOf(hx.at(0, 0)) != f.mean_bin ||
        grid_.BinOf(hx.at(degree, 0)) != f.moment_bin) {
      return std::nullopt;
    }
    return Activation{f.component == kMeanComponent ? 0 : degree, f.coord,
                      f.sign_slot == 0 ? 1.0 : -1.0};
  }

 private:
  struct Fields {
    int component;
    int group;
    int mean_bin;
    int moment_bin;
    int degree_slot;
    int coord;
    int sign_slot;
  };

  double Residual(int component, int degree, int coord, const Prediction& hx,
                  int y) const {
    if (component == kMeanComponent) {
      return hx.at(0, coord) - (y == coord ? 1.0 : 0.0);
    }
    const double t = MomentTarget(y, hx.at(0, 0), degree);
    const double target = coord == 0 ? t : 1.0 - t;
    return hx.at(degree, coord) - target;
  }

  ObjectiveIndex Encode(int component, int group, int mean_bin, int moment_bin,
                        size_t degree_slot, int coord, int sign_slot) const {
    const uint64_t nv = grid_.num_values();
    uint64_t index = group;
    index = index * nv + mean_bin;
    index = index * nv + moment_bin;
    index = index * degrees_.size() + degree_slot;
    index = index * 2 + coord;
    index = index * num_signs_ + sign_slot;
    return component * half_ + index;
  }

  Fields Decode(ObjectiveIndex index) const {
    Fields f;
    f.component = index < half_ ? kMeanComponent : kMomentComponent;
    index %= half_;
    const uint64_t nv = grid_.num_values();
    f.sign_slot = static_cast<int>(index % num_signs_);
    index /= num_signs_;
    f.coord = static_cast<int>(index % 2);
    index /= 2;
    f.degree_slot = static_cast<int>(index % degrees_.size());
    index /= degrees_.size();
    f.moment_bin = static_cast<int>(index % nv);
    index /= nv;
    f.mean_bin = static_cast<int>(index % nv);
    f.group = static_cast<int>(index / nv);
    return f;
  }

  template <typename F>
  void ForEachGroup(GroupMask w, F&& f) const {
    for (GroupMask bits = w; bits != 0; bits &= bits - 1) {
      const int group = __builtin_ctzll(bits);
      if (group < num_groups_) f(group);
    }
  }

  void CheckSignature(const Prediction& hx) const {
    MOGAME_CHECK(hx.classes() == 2 && hx.rows() == signature_.rows,
                 "prediction does not match the moment signature");
  }

  int num_groups_;
  LevelGrid grid_;
  std::vector<int> degrees_;
  std::vector<int> degree_slot_;
  int num_signs_;
  uint64_t half_ = 0;
  PredictorSignature signature_;
};

}  // namespace

absl::StatusOr<std::shared_ptr<const ObjectiveSet>> BuildMomentSet(
    int num_groups, const LevelGrid& grid, int moments,
    const MomentSetOptions& options) {
  MOGAME_CHECK(moments >= 2, "moment calibration needs r >= 2");
  if (num_groups < 1 || num_groups > kMaxGroups) {
    return absl::InvalidArgumentError(
        absl::StrFormat("group count must lie in [1, %d]", kMaxGroups));
  }
  std::vector<int> degrees = options.degrees;
  if (degrees.empty()) {
    for (int a = 2; a <= moments; a += 2) degrees.push_back(a);
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int a : degrees) {
    if (a < 1 || a > moments) {
      return absl::InvalidArgumentError(
          absl::StrFormat("moment degree %d outside [1, %d]", a, moments));
    }
  }
  const uint64_t nv = grid.num_values();
  const uint64_t size = 2ull * num_groups * nv * nv * degrees.size() * 2 *
                        (options.sign_closed ? 2 : 1);
  if (size > options.max_objectives) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "moment objective set would exceed the cap of %d objectives",
        options.max_objectives));
  }
  return std::make_shared<const MomentSet>(num_groups, grid, moments,
                                           std::move(degrees),
                                           options.sign_closed);
}

}  // namespace mogame
