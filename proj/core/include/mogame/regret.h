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

// Regret of either player over a recorded transcript.

#ifndef MOGAME_REGRET_H_
#define MOGAME_REGRET_H_

#include <cstdint>
#include <optional>
#include <span>

#include "absl/status/statusor.h"
#include "mogame/predictor.h"
#include "mogame/problem.h"
#include "mogame/transcript.h"

namespace mogame {

enum class RegretPlayer { kAdversary, kLearner };
// kEmpirical scores rounds on the recorded samples; kExact takes
// expectations under the distributions.
enum class RegretSource { kEmpirical, kExact };
enum class RegretKind { kStandard, kWeak };

struct RegretQuery {
  RegretPlayer player = RegretPlayer::kAdversary;
  RegretSource source = RegretSource::kEmpirical;
  RegretKind kind = RegretKind::kStandard;
  int component = 0;
  // Weak regret: the minmax value v. Required for kWeak.
  std::optional<double> reference;
  // Learner standard regret: step of the per-row simplex grid of fixed
  // actions. Ignored when comparators are given.
  double grid_step = 0.05;
  // Learner standard regret against a finite class instead of the grid.
  std::span<const DeterministicPredictor> comparators;
};

struct RegretValue {
  double regret = 0.0;
  // Cumulative loss the player actually incurred.
  double realized = 0.0;
  // Cumulative loss of the best fixed action in hindsight, or T·v.
  double comparator = 0.0;
  int64_t rounds = 0;
};

// Adversary standard regret: max_ℓ Σ_t ℓ(h^t) − realized.
// Learner standard regret: realized − min over fixed predictors.
// Weak regrets compare against T·v: realized − T·v for the learner and
// T·v − realized for the adversary.
//
// Exact adversary-side values need recorded mixtures for no-regret
// adversaries. Empirical values need recorded samples, which best-response
// transcripts do not carry.
absl::StatusOr<RegretValue> ComputeRegret(const MultiObjectiveProblem& problem,
                                          const Transcript& transcript,
                                          const RegretQuery& query);

}  // namespace mogame

#endif  // MOGAME_REGRET_H_
