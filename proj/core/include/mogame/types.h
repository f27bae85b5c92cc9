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

// Value types shared by every module: domain points, group families,
// samples, the level grid and row-stochastic predictions.

#ifndef MOGAME_TYPES_H_
#define MOGAME_TYPES_H_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "mogame/base.h"

namespace mogame {

// Membership bits; bit i set means the sample belongs to group i.
using GroupMask = uint64_t;

inline constexpr int kMaxGroups = 64;
inline constexpr double kRowSumTolerance = 1e-9;

struct DomainPoint {
  int index = 0;

  friend auto operator<=>(const DomainPoint&, const DomainPoint&) = default;
};

struct Sample {
  DomainPoint x;
  GroupMask w = 0;
  int y = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

inline bool InGroup(GroupMask w, int group) { return (w >> group) & 1u; }

// Subsets of a finite domain.
class GroupFamily {
 public:
  // Every group must be nonempty and index into [0, domain_size).
  static absl::StatusOr<GroupFamily> Create(
      int domain_size, std::vector<std::vector<int>> groups);

  // Single group equal to the whole domain.
  static GroupFamily Whole(int domain_size);

  int size() const { return static_cast<int>(members_.size()); }
  int domain_size() const { return domain_size_; }
  const std::vector<int>& members(int group) const { return members_[group]; }
  bool Contains(int group, DomainPoint x) const {
    return InGroup(masks_[x.index], group);
  }
  GroupMask MaskOf(DomainPoint x) const { return masks_[x.index]; }

 private:
  GroupFamily(int domain_size, std::vector<std::vector<int>> members,
              std::vector<GroupMask> masks)
      : domain_size_(domain_size),
        members_(std::move(members)),
        masks_(std::move(masks)) {}

  int domain_size_;
  std::vector<std::vector<int>> members_;
  std::vector<GroupMask> masks_;
};

// Discretization {0, λ, ..., λ⌈1/λ⌉} with half-open bins [v, v+λ) and the
// last bin closed at 1.
class LevelGrid {
 public:
  static absl::StatusOr<LevelGrid> Create(double lambda);

  double lambda() const { return lambda_; }
  int num_values() const { return num_values_; }
  double value(int bin) const { return bin * lambda_; }
  int BinOf(double c) const;

 private:
  LevelGrid(double lambda, int num_values)
      : lambda_(lambda), num_values_(num_values) {}

  double lambda_;
  int num_values_;
};

// r probability vectors of length k, stored row-major.
class Prediction {
 public:
  Prediction() = default;

  static absl::StatusOr<Prediction> Create(int rows, int classes,
                                           std::vector<double> values);
  static absl::StatusOr<Prediction> FromRows(
      const std::vector<std::vector<double>>& rows);
  static Prediction Uniform(int rows, int classes);
  // Caller guarantees the row-sum invariant (checked in debug builds).
  static Prediction FromTrusted(int rows, int classes,
                                std::vector<double> values);

  int rows() const { return rows_; }
  int classes() const { return classes_; }
  double at(int row, int j) const { return values_[row * classes_ + j]; }
  std::span<const double> row(int r) const {
    return {values_.data() + r * classes_, static_cast<size_t>(classes_)};
  }
  std::span<const double> values() const { return values_; }

  // Copy with row `r` replaced. The replacement must be a probability vector.
  Prediction WithRow(int r, std::span<const double> row) const;

  friend bool operator==(const Prediction&, const Prediction&) = default;

 private:
  Prediction(int rows, int classes, std::vector<double> values)
      : rows_(rows), classes_(classes), values_(std::move(values)) {}

  int rows_ = 0;
  int classes_ = 0;
  std::vector<double> values_;
};

// Bin index of every row-coordinate, row-major.
std::vector<int> BinOf(const Prediction& p, const LevelGrid& grid);

// Row ranges owned by each learner component. Components tile
// [0, rows) in order.
struct PredictorSignature {
  int classes = 2;
  int rows = 1;
  std::vector<int> component_rows = {1};

  int num_components() const { return static_cast<int>(component_rows.size()); }
  int first_row(int component) const;

  friend bool operator==(const PredictorSignature&,
                         const PredictorSignature&) = default;
};

}  // namespace mogame

#endif  // MOGAME_TYPES_H_
