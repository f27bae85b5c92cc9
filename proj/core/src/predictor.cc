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

#include "mogame/predictor.h"

#include "absl/strings/str_format.h"

namespace mogame {

absl::StatusOr<DeterministicPredictor> DeterministicPredictor::Create(
    std::vector<Prediction> table) {
  if (table.empty()) {
    return absl::InvalidArgumentError("predictor table is empty");
  }
  const int rows = table.front().rows();
  const int classes = table.front().classes();
  if (rows < 1 || classes < 2) {
    return absl::InvalidArgumentError("predictor entry is not initialized");
  }
  for (size_t x = 0; x < table.size(); ++x) {
    if (table[x].rows() != rows || table[x].classes() != classes) {
      return absl::InvalidArgumentError(
          absl::StrFormat("entry %d has signature (%d, %d), expected (%d, %d)",
                          x, table[x].rows(), table[x].classes(), rows,
                          classes));
    }
  }
  return DeterministicPredictor(std::move(table));
}

DeterministicPredictor DeterministicPredictor::Constant(
    int domain_size, const Prediction& prediction) {
  return DeterministicPredictor(
      std::vector<Prediction>(domain_size, prediction));
}

DeterministicPredictor DeterministicPredictor::With(DomainPoint x,
                                                    Prediction p) const {
  MOGAME_CHECK(p.rows() == rows() && p.classes() == classes(),
               "replacement prediction has a different signature");
  DeterministicPredictor out = *this;
  out.table_[x.index] = std::move(p);
  return out;
}

absl::StatusOr<EnsemblePredictor> EnsemblePredictor::Create(
    std::vector<DeterministicPredictor> members) {
  if (members.empty()) {
    return absl::InvalidArgumentError("ensemble needs at least one member");
  }
  const auto& first = members.front();
  for (const auto& m : members) {
    if (m.domain_size() != first.domain_size() || m.rows() != first.rows() ||
        m.classes() != first.classes()) {
      return absl::InvalidArgumentError("ensemble members differ in signature");
    }
  }
  return EnsemblePredictor(std::move(members));
}

}  // namespace mogame
