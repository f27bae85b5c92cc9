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

#ifndef MOGAME_HEDGE_H_
#define MOGAME_HEDGE_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace mogame {

// Multiplicative weights over n actions with the fixed-horizon rate
// η = sqrt(8 ln n / T). Losses lie in [-1, 1]; the weight of action i after
// the losses l^1..l^t is proportional to exp(-η Σ_s l^s_i).
class Hedge {
 public:
  static absl::StatusOr<Hedge> Create(int64_t num_actions, int64_t horizon);

  int64_t num_actions() const { return static_cast<int64_t>(log_weights_.size()); }
  int64_t horizon() const { return horizon_; }
  int64_t rounds() const { return rounds_; }
  double eta() const { return eta_; }

  // Dense update; every entry must lie in [-1, 1].
  void Update(std::span<const double> losses);
  // Update where only the listed actions have nonzero loss. Indices may
  // repeat; their losses add and the sum must lie in [-1, 1].
  void UpdateSparse(std::span<const std::pair<int64_t, double>> losses);

  std::vector<double> Distribution() const;
  const std::vector<double>& log_weights() const { return log_weights_; }

  std::string ToJson() const;
  static absl::StatusOr<Hedge> FromJson(const std::string& text);

 private:
  Hedge(int64_t n, int64_t horizon, double eta)
      : log_weights_(n, 0.0), horizon_(horizon), eta_(eta) {}

  std::vector<double> log_weights_;
  int64_t horizon_;
  double eta_;
  int64_t rounds_ = 0;
};

}  // namespace mogame

#endif  // MOGAME_HEDGE_H_
