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
#include <limits>

#include "absl/strings/str_format.h"
#include "mogame/objectives.h"

namespace mogame {
namespace {

// Returns false on overflow.
bool CheckedMul(uint64_t a, uint64_t b, uint64_t* out) {
  if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) return false;
  *out = a * b;
  return true;
}

class CalibrationSet final : public ObjectiveSet {
 public:
  CalibrationSet(CalibrationKind kind, int num_groups, const LevelGrid& grid,
                 int classes, std::vector<int> coords, bool sign_closed,
                 uint64_t bin_vectors, uint64_t size)
      : kind_(kind),
        num_groups_(num_groups),
        grid_(grid),
        coords_(std::move(coords)),
        coord_slot_(classes, -1),
        num_signs_(sign_closed ? 2 : 1),
        bin_vectors_(bin_vectors),
        size_(size) {
    signature_.classes = classes;
    signature_.rows = 1;
    signature_.component_rows = {1};
    for (size_t i = 0; i < coords_.size(); ++i) coord_slot_[coords_[i]] = i;
  }

  ObjectiveIndex size() const override { return size_; }
  const PredictorSignature& signature() const override { return signature_; }
  int num_distributions() const override {
    return kind_ == CalibrationKind::kConditional ? num_groups_ : 1;
  }
  int DistributionOf(ObjectiveIndex index) const override {
    return kind_ == CalibrationKind::kConditional ? Decode(index).group : 0;
  }
  bool sign_closed() const override { return num_signs_ == 2; }
  bool permutation_closed() const override {
    return static_cast<int>(coords_.size()) == signature_.classes;
  }
  bool one_hot_targets() const override { return true; }

  LinearObjective Describe(ObjectiveIndex index) const override {
    MOGAME_CHECK(index < size_, "objective index out of range");
    const Fields f = Decode(index);
    LinearObjective o;
    o.kind = ObjectiveKindOf();
    o.base_kind = o.kind;
    o.group = f.group;
    o.bins = BinDigits(f.bin);
    o.coord = coords_[f.coord_slot];
    o.sign = f.sign_slot == 0 ? 1 : -1;
    return o;
  }

  std::optional<ObjectiveIndex> IndexOf(
      const LinearObjective& o) const override {
    if (o.kind != ObjectiveKindOf() || o.group < 0 || o.group >= num_groups_ ||
        static_cast<int>(o.bins.size()) != signature_.classes ||
        o.coord < 0 || o.coord >= signature_.classes ||
        coord_slot_[o.coord] < 0 || o.moment_degree != 0 ||
        o.component != 0 || o.baseline != -1) {
      return std::nullopt;
    }
    if (o.sign != 1 && !(o.sign == -1 && num_signs_ == 2)) return std::nullopt;
    uint64_t bin = 0;
    for (int digit : o.bins) {
      if (digit < 0 || digit >= grid_.num_values()) return std::nullopt;
      bin = bin * grid_.num_values() + digit;
    }
    return Encode(o.group, bin, coord_slot_[o.coord], o.sign > 0 ? 0 : 1);
  }

  double Evaluate(ObjectiveIndex index, const Prediction& hx,
                  const Sample& z) const override {
    CheckSignature(hx);
    const Fields f = Decode(index);
    if (kind_ != CalibrationKind::kConditional && !InGroup(z.w, f.group)) {
      return 0.0;
    }
    if (BinIndex(hx) != f.bin) return 0.0;
    const int j = coords_[f.coord_slot];
    const double residual = hx.at(0, j) - (z.y == j ? 1.0 : 0.0);
    return f.sign_slot == 0 ? residual : -residual;
  }

  void ForEachActive(const Prediction& hx, const Sample& z, int d,
                     ActiveVisitor visit) const override {
    CheckSignature(hx);
    const uint64_t bin = BinIndex(hx);
    ForEachOpenGroup(z.w, d, [&](int group) {
      for (size_t slot = 0; slot < coords_.size(); ++slot) {
        const int j = coords_[slot];
        const double residual = hx.at(0, j) - (z.y == j ? 1.0 : 0.0);
        for (int s = 0; s < num_signs_; ++s) {
          visit(Encode(group, bin, slot, s), s == 0 ? residual : -residual);
        }
      }
    });
  }

  void ForEachGate(const Prediction& hx, DomainPoint, GroupMask w, int d,
                   GateVisitor visit) const override {
    CheckSignature(hx);
    const uint64_t bin = BinIndex(hx);
    ForEachOpenGroup(w, d, [&](int group) {
      for (size_t slot = 0; slot < coords_.size(); ++slot) {
        for (int s = 0; s < num_signs_; ++s) {
          visit(Encode(group, bin, slot, s),
                Activation{0, coords_[slot], s == 0 ? 1.0 : -1.0});
        }
      }
    });
  }

  std::optional<Activation> Activate(ObjectiveIndex index,
                                     const Prediction& hx, DomainPoint,
                                     GroupMask w) const override {
    CheckSignature(hx);
    const Fields f = Decode(index);
    if (kind_ != CalibrationKind::kConditional && !InGroup(w, f.group)) {
      return std::nullopt;
    }
    if (BinIndex(hx) != f.bin) return std::nullopt;
    return Activation{0, coords_[f.coord_slot], f.sign_slot == 0 ? 1.0 : -1.0};
  }

 private:
  struct Fields {
    int group;
    uint64_t bin;
    int coord_slot;
    int sign_slot;
  };

  ObjectiveKind ObjectiveKindOf() const {
    switch (kind_) {
      case CalibrationKind::kMean:
        return ObjectiveKind::kMean;
      case CalibrationKind::kAgnostic:
        return ObjectiveKind::kAgnostic;
      case CalibrationKind::kConditional:
        return ObjectiveKind::kConditional;
    }
    return ObjectiveKind::kMean;
  }

  ObjectiveIndex Encode(int group, uint64_t bin, size_t coord_slot,
                        int sign_slot) const {
    return ((group * bin_vectors_ + bin) * coords_.size() + coord_slot) *
               num_signs_ +
           sign_slot;
  }

  Fields Decode(ObjectiveIndex index) const {
    Fields f;
    f.sign_slot = static_cast<int>(index % num_signs_);
    index /= num_signs_;
    f.coord_slot = static_cast<int>(index % coords_.size());
    index /= coords_.size();
    f.bin = index % bin_vectors_;
    f.group = static_cast<int>(index / bin_vectors_);
    return f;
  }

  std::vector<int> BinDigits(uint64_t bin) const {
    std::vector<int> digits(signature_.classes);
    for (int j = signature_.classes - 1; j >= 0; --j) {
      digits[j] = static_cast<int>(bin % grid_.num_values());
      bin /= grid_.num_values();
    }
    return digits;
  }

  // Mixed-radix bin vector of the mean row, first coordinate most
  // significant.
  uint64_t BinIndex(const Prediction& hx) const {
    uint64_t bin = 0;
    for (int j = 0; j < signature_.classes; ++j) {
      bin = bin * grid_.num_values() + grid_.BinOf(hx.at(0, j));
    }
    return bin;
  }

  template <typename F>
  void ForEachOpenGroup(GroupMask w, int d, F&& f) const {
    if (kind_ == CalibrationKind::kConditional) {
      f(d);
      return;
    }
    for (GroupMask bits = w; bits != 0; bits &= bits - 1) {
      const int group = __builtin_ctzll(bits);
      if (group < num_groups_) f(group);
    }
  }

  void CheckSignature(const Prediction& hx) const {
    MOGAME_CHECK(hx.classes() == signature_.classes && hx.rows() >= 1,
                 "prediction does not match the objective signature");
  }

  CalibrationKind kind_;
  int num_groups_;
  LevelGrid grid_;
  std::vector<int> coords_;
  std::vector<int> coord_slot_;
  int num_signs_;
  uint64_t bin_vectors_;
  uint64_t size_;
  PredictorSignature signature_;
};

}  // namespace

absl::StatusOr<std::shared_ptr<const ObjectiveSet>> BuildCalibrationSet(
    CalibrationKind kind, int num_groups, const LevelGrid& grid, int classes,
    const CalibrationSetOptions& options) {
  if (classes < 2) return absl::InvalidArgumentError("need k >= 2");
  if (num_groups < 1 || num_groups > kMaxGroups) {
    return absl::InvalidArgumentError(
        absl::StrFormat("group count must lie in [1, %d]", kMaxGroups));
  }
  std::vector<int> coords = options.coords;
  if (coords.empty()) {
    for (int j = 0; j < classes; ++j) coords.push_back(j);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  for (int j : coords) {
    if (j < 0 || j >= classes) {
      return absl::InvalidArgumentError(
          absl::StrFormat("coordinate %d outside [0, %d)", j, classes));
    }
  }
  uint64_t bin_vectors = 1;
  uint64_t size = 0;
  bool ok = true;
  for (int j = 0; j < classes && ok; ++j) {
    ok = CheckedMul(bin_vectors, grid.num_values(), &bin_vectors);
  }
  ok = ok && CheckedMul(bin_vectors, num_groups, &size) &&
       CheckedMul(size, coords.size(), &size) &&
       CheckedMul(size, options.sign_closed ? 2 : 1, &size);
  if (!ok || size > options.max_objectives) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "objective set would exceed the cap of %d objectives "
        "(%d bin values per coordinate, k=%d); use a coarser lambda or raise "
        "the cap",
        options.max_objectives, grid.num_values(), classes));
  }
  return std::make_shared<const CalibrationSet>(
      kind, num_groups, grid, classes, std::move(coords), options.sign_closed,
      bin_vectors, size);
}

}  // namespace mogame
