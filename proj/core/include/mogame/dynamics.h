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

// Game dynamics drivers, iterate selection and rounding.

#ifndef MOGAME_DYNAMICS_H_
#define MOGAME_DYNAMICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "mogame/base.h"
#include "mogame/best_response.h"
#include "mogame/oracles.h"
#include "mogame/predictor.h"
#include "mogame/problem.h"
#include "mogame/transcript.h"

namespace mogame {

// ceil(c ε^-2 ln(2|G|/δ)).
int64_t DefaultNrnrRounds(double epsilon, double delta, double set_size,
                          double constant = 16.0);
// ceil(c ε^-2 · rows · ln k), rows = activated rows per component.
int64_t DefaultNrbrRounds(double epsilon, int classes, int active_rows,
                          double constant = 16.0);

enum class LearnerKind {
  // Best response when the problem allows it and k <= 3, else lazy.
  kAuto,
  kBestResponse,
  kLazy,
  // Hedge over an explicit finite class; plays a sampled member.
  kHedgeOverClass,
};

struct NrnrConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  // 0 selects DefaultNrnrRounds.
  int64_t rounds = 0;
  double horizon_constant = 16.0;
  LearnerKind learner = LearnerKind::kAuto;
  BestResponseOptions best_response;
  std::vector<DeterministicPredictor> hypothesis_class;
  bool record_mixtures = true;
};

struct NrnrResult {
  EnsemblePredictor ensemble;
  Transcript transcript;
  OracleCounters counters;
  LearnerKind learner = LearnerKind::kAuto;
};

absl::StatusOr<NrnrResult> RunNrnr(const MultiObjectiveProblem& problem,
                                   const NrnrConfig& config, Rng& rng,
                                   uint64_t seed = 0);

struct NrbrConfig {
  double epsilon = 0.1;
  // 0 selects DefaultNrbrRounds.
  int64_t rounds = 0;
  double horizon_constant = 16.0;
  OracleConfig oracle;
};

struct NrbrResult {
  std::vector<DeterministicPredictor> iterates;
  Transcript transcript;
  OracleCounters counters;
};

absl::StatusOr<NrbrResult> RunNrbr(const MultiObjectiveProblem& problem,
                                   const NrbrConfig& config, Rng& rng,
                                   uint64_t seed = 0);

enum class FindMode { kSamples, kOracle };

struct FindResult {
  int64_t index = 0;
  // Estimated multi-objective loss of the selected candidate.
  double estimate = 0.0;
  int64_t samples_drawn = 0;
  int64_t oracle_calls = 0;
};

// ceil(8 ε^-2 ln(4 T |G| / δ)).
int64_t FindSampleSize(double epsilon, double delta, int64_t candidates,
                       double set_size);

// Samples mode: argmin over candidates of the empirical max loss on one
// shared sample. Oracle mode: one oracle call per candidate and component,
// then one selection call.
absl::StatusOr<FindResult> Find(
    const MultiObjectiveProblem& problem,
    std::span<const DeterministicPredictor> candidates, double epsilon,
    double delta, FindMode mode, Rng& rng,
    const OracleConfig& oracle = OracleConfig{});

// Per point: the modal bin vector over members (lexicographically smallest
// on ties) and the row-renormalized mean of the members in that bin.
DeterministicPredictor MajorityRound(const EnsemblePredictor& ensemble,
                                     const LevelGrid& grid);

}  // namespace mogame

#endif  // MOGAME_DYNAMICS_H_
