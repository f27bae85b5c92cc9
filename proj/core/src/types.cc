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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "absl/strings/str_format.h"

namespace mogame {
namespace internal {

void CheckFailed(std::string_view file, int line, std::string_view condition,
                 std::string_view message) {
  std::fprintf(stderr, "%.*s:%d: check failed: %.*s: %.*s\n",
               static_cast<int>(file.size()), file.data(), line,
               static_cast<int>(condition.size()), condition.data(),
               static_cast<int>(message.size()), message.data());
  std::abort();
}

}  // namespace internal

absl::StatusOr<GroupFamily> GroupFamily::Create(
    int domain_size, std::vector<std::vector<int>> groups) {
  if (domain_size < 1) {
    return absl::InvalidArgumentError("domain size must be positive");
  }
  if (groups.empty()) {
    return absl::InvalidArgumentError("group family must contain a group");
  }
  if (groups.size() > kMaxGroups) {
    return absl::InvalidArgumentError(
        absl::StrFormat("at most %d groups are supported", kMaxGroups));
  }
  std::vector<GroupMask> masks(domain_size, 0);
  for (size_t g = 0; g < groups.size(); ++g) {
    auto& members = groups[g];
    if (members.empty()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("group %d is empty", g));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (int x : members) {
      if (x < 0 || x >= domain_size) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "group %d contains %d outside [0, %d)", g, x, domain_size));
      }
      masks[x] |= GroupMask{1} << g;
    }
  }
  return GroupFamily(domain_size, std::move(groups), std::move(masks));
}

GroupFamily GroupFamily::Whole(int domain_size) {
  std::vector<int> all(domain_size);
  for (int x = 0; x < domain_size; ++x) all[x] = x;
  return GroupFamily(domain_size, {all},
                     std::vector<GroupMask>(domain_size, 1));
}

absl::StatusOr<LevelGrid> LevelGrid::Create(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("lambda must lie in (0, 1], got %g", lambda));
  }
  const int steps = static_cast<int>(std::ceil(1.0 / lambda - 1e-9));
  return LevelGrid(lambda, steps + 1);
}

int LevelGrid::BinOf(double c) const {
  int bin = static_cast<int>(std::floor(c / lambda_ + 1e-9));
  return std::clamp(bin, 0, num_values_ - 1);
}

namespace {

absl::Status ValidateRows(int rows, int classes,
                          const std::vector<double>& values) {
  if (rows < 1 || classes < 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("prediction needs r >= 1 and k >= 2, got r=%d k=%d",
                        rows, classes));
  }
  if (values.size() != static_cast<size_t>(rows) * classes) {
    return absl::InvalidArgumentError("prediction has the wrong size");
  }
  for (int r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (int j = 0; j < classes; ++j) {
      const double v = values[r * classes + j];
      if (!(v >= 0.0 && v <= 1.0)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("row %d has entry %g outside [0,1]", r, v));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      return absl::InvalidArgumentError(
          absl::StrFormat("row %d sums to %.17g", r, sum));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Prediction> Prediction::Create(int rows, int classes,
                                              std::vector<double> values) {
  MOGAME_RETURN_IF_ERROR(ValidateRows(rows, classes, values));
  return Prediction(rows, classes, std::move(values));
}

absl::StatusOr<Prediction> Prediction::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return absl::InvalidArgumentError("no rows");
  const int classes = static_cast<int>(rows.front().size());
  std::vector<double> values;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != classes) {
      return absl::InvalidArgumentError("rows differ in length");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return Create(static_cast<int>(rows.size()), classes, std::move(values));
}

Prediction Prediction::Uniform(int rows, int classes) {
  return Prediction(rows, classes,
                    std::vector<double>(rows * classes, 1.0 / classes));
}

Prediction Prediction::FromTrusted(int rows, int classes,
                                   std::vector<double> values) {
#ifndef NDEBUG
  MOGAME_CHECK(ValidateRows(rows, classes, values).ok(),
               "trusted prediction violates the row invariant");
#endif
  return Prediction(rows, classes, std::move(values));
}

Prediction Prediction::WithRow(int r, std::span<const double> row) const {
  MOGAME_CHECK(static_cast<int>(row.size()) == classes_, "row length");
  std::vector<double> values = values_;
  std::copy(row.begin(), row.end(), values.begin() + r * classes_);
  return FromTrusted(rows_, classes_, std::move(values));
}

std::vector<int> BinOf(const Prediction& p, const LevelGrid& grid) {
  std::vector<int> bins(p.values().size());
  for (size_t i = 0; i < bins.size(); ++i) bins[i] = grid.BinOf(p.values()[i]);
  return bins;
}

int PredictorSignature::first_row(int component) const {
  int row = 0;
  for (int c = 0; c < component; ++c) row += component_rows[c];
  return row;
}

}  // namespace mogame
