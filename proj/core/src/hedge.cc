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

#include "mogame/hedge.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mogame/base.h"

namespace mogame {
namespace {

constexpr double kLossSlack = 1e-12;

void CheckLoss(double loss) {
  MOGAME_CHECK(loss >= -1.0 - kLossSlack && loss <= 1.0 + kLossSlack,
               "Hedge loss outside [-1, 1]");
}

}  // namespace

absl::StatusOr<Hedge> Hedge::Create(int64_t num_actions, int64_t horizon) {
  if (num_actions < 1) {
    return absl::InvalidArgumentError("Hedge needs at least one action");
  }
  if (horizon < 1) return absl::InvalidArgumentError("horizon must be >= 1");
  const double log_n = std::log(static_cast<double>(std::max<int64_t>(num_actions, 2)));
  return Hedge(num_actions, horizon,
               std::sqrt(8.0 * log_n / static_cast<double>(horizon)));
}

void Hedge::Update(std::span<const double> losses) {
  MOGAME_CHECK(static_cast<int64_t>(losses.size()) == num_actions(),
               "loss vector length differs from the action count");
  for (size_t i = 0; i < losses.size(); ++i) {
    CheckLoss(losses[i]);
    log_weights_[i] -= eta_ * losses[i];
  }
  ++rounds_;
}

void Hedge::UpdateSparse(std::span<const std::pair<int64_t, double>> losses) {
  for (const auto& [i, loss] : losses) {
    MOGAME_CHECK(i >= 0 && i < num_actions(), "action index out of range");
    CheckLoss(loss);
    log_weights_[i] -= eta_ * loss;
  }
  ++rounds_;
}

std::vector<double> Hedge::Distribution() const {
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  std::vector<double> p(log_weights_.size());
  double total = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(log_weights_[i] - top);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

std::string Hedge::ToJson() const {
  nlohmann::json j;
  j["horizon"] = horizon_;
  j["eta"] = eta_;
  j["rounds"] = rounds_;
  j["log_weights"] = log_weights_;
  return j.dump();
}

absl::StatusOr<Hedge> Hedge::FromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("Hedge state is not a JSON object");
  }
  try {
    Hedge h(1, j.at("horizon").get<int64_t>(), j.at("eta").get<double>());
    h.rounds_ = j.at("rounds").get<int64_t>();
    h.log_weights_ = j.at("log_weights").get<std::vector<double>>();
    if (h.log_weights_.empty() || !(h.eta_ > 0.0)) {
      return absl::InvalidArgumentError("Hedge state is malformed");
    }
    return h;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
}

}  // namespace mogame
