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

#ifndef MOGAME_TRANSCRIPT_H_
#define MOGAME_TRANSCRIPT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mogame/objectives.h"
#include "mogame/predictor.h"
#include "mogame/problem.h"

namespace mogame {

enum class DynamicsKind { kNrnr, kNrbr };

const char* DynamicsName(DynamicsKind kind);

struct AdversaryChoice {
  // Objective chosen by a best-responding adversary; empty for mixtures and
  // for below-threshold answers.
  std::optional<ObjectiveIndex> objective;
  bool below_threshold = false;
  // Hedge distribution over the component's objectives (offset from the
  // component's first index). Empty when mixtures are not recorded.
  std::vector<double> mixture;
  // Heaviest objective of the mixture and its mass.
  ObjectiveIndex top = 0;
  double top_mass = 0.0;
};

struct RoundRecord {
  DeterministicPredictor prediction;
  std::vector<AdversaryChoice> choices;
  // One sample per distribution; empty when the round drew none.
  std::vector<Sample> samples;
  // Adversary-side loss per component: q^t-weighted sample loss for
  // no-regret adversaries, the oracle's estimate for best responders.
  std::vector<double> realized_losses;
};

struct Transcript {
  DynamicsKind dynamics = DynamicsKind::kNrnr;
  ProblemKind problem_kind = ProblemKind::kMulticalibration;
  uint64_t seed = 0;
  std::vector<RoundRecord> rounds;

  int64_t size() const { return static_cast<int64_t>(rounds.size()); }

  // One JSON object per line per round followed by a summary line holding
  // `summary_json` (an object) under the key "summary".
  std::string ToJsonLines(const std::string& summary_json,
                          bool include_mixtures = false) const;
};

}  // namespace mogame

#endif  // MOGAME_TRANSCRIPT_H_
