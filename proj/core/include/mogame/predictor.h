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

#ifndef MOGAME_PREDICTOR_H_
#define MOGAME_PREDICTOR_H_

#include <vector>

#include "absl/status/statusor.h"
#include "mogame/types.h"

namespace mogame {

// Table from domain index to Prediction. All entries share (r, k).
class DeterministicPredictor {
 public:
  DeterministicPredictor() = default;

  static absl::StatusOr<DeterministicPredictor> Create(
      std::vector<Prediction> table);
  static DeterministicPredictor Constant(int domain_size,
                                         const Prediction& prediction);

  int domain_size() const { return static_cast<int>(table_.size()); }
  int rows() const { return table_.empty() ? 0 : table_.front().rows(); }
  int classes() const { return table_.empty() ? 0 : table_.front().classes(); }

  const Prediction& at(DomainPoint x) const { return table_[x.index]; }
  const Prediction& operator()(DomainPoint x) const { return at(x); }
  const std::vector<Prediction>& table() const { return table_; }

  // Copy with the entry at x replaced; the signature must match.
  DeterministicPredictor With(DomainPoint x, Prediction p) const;

  friend bool operator==(const DeterministicPredictor&,
                         const DeterministicPredictor&) = default;

 private:
  explicit DeterministicPredictor(std::vector<Prediction> table)
      : table_(std::move(table)) {}

  std::vector<Prediction> table_;
};

// Uniform mixture of deterministic predictors.
class EnsemblePredictor {
 public:
  static absl::StatusOr<EnsemblePredictor> Create(
      std::vector<DeterministicPredictor> members);

  const std::vector<DeterministicPredictor>& members() const {
    return members_;
  }
  int size() const { return static_cast<int>(members_.size()); }
  double weight() const { return 1.0 / members_.size(); }

 private:
  explicit EnsemblePredictor(std::vector<DeterministicPredictor> members)
      : members_(std::move(members)) {}

  std::vector<DeterministicPredictor> members_;
};

}  // namespace mogame

#endif  // MOGAME_PREDICTOR_H_
