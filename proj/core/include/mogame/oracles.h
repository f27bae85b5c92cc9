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

// Adversary oracles that answer "which objective does h do worst on".

#ifndef MOGAME_ORACLES_H_
#define MOGAME_ORACLES_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "mogame/base.h"
#include "mogame/problem.h"

namespace mogame {

enum class OracleMode { kExact, kEmpirical, kNoisyMax, kWeak };

const char* OracleModeName(OracleMode mode);
absl::StatusOr<OracleMode> ParseOracleMode(std::string_view name);

struct OracleConfig {
  OracleMode mode = OracleMode::kExact;
  double epsilon = 0.1;
  double delta = 0.05;
  // Empirical mode: fresh samples per query (per distribution); 0 selects
  // ceil(8 ε^-2 ln(4|G|/δ)).
  int64_t samples = 0;
  // Noisy-max: buffer size; 0 selects
  // ceil(c · sqrt(T) ε^-2 ln(|G|/ε) ln^{3/2}(1/(εδ))).
  int64_t buffer_size = 0;
  double buffer_constant = 1.0;
  int64_t horizon = 1;
  // Noisy-max noise scale; 0 selects ε / (4 sqrt(2 ln(2|G|/δ))).
  double sigma = 0.0;
  // Multiplicative factor of the agnostic guarantee; informational.
  double c = 1.0;
  // Weak mode: the minmax value the oracle must beat.
  std::optional<double> reference;
};

struct OracleCounters {
  int64_t oracle_calls = 0;
  int64_t samples_drawn = 0;
};

struct OracleAnswer {
  // Empty when a weak oracle reports below-threshold.
  std::optional<ObjectiveIndex> index;
  // The oracle's own estimate of the returned objective's loss.
  double estimate = 0.0;
};

int64_t EmpiricalSampleSize(double epsilon, double delta, double set_size);
int64_t NoisyMaxBufferSize(double epsilon, double delta, double set_size,
                           int64_t horizon, double constant = 1.0);
double DefaultNoisyMaxSigma(double epsilon, double delta, double set_size);

// Weighted samples standing in for a distribution.
struct WeightedSample {
  Sample sample;
  double weight = 0.0;
};

// Aggregates i.i.d. draws into a weighted buffer with weights 1/n.
std::vector<WeightedSample> DrawBuffer(const TabularDistribution& dist,
                                       int64_t n, Rng& rng);

// Per-objective losses of h on weighted buffers (one per distribution).
SparseLosses BufferLosses(const MultiObjectiveProblem& problem,
                          const DeterministicPredictor& h,
                          const std::vector<std::vector<WeightedSample>>& buffers);

// Oracle over one component's objectives. Holds a reference to `problem`,
// which must outlive it.
class AdversaryOracle {
 public:
  static absl::StatusOr<AdversaryOracle> Create(
      const MultiObjectiveProblem& problem, int component,
      const OracleConfig& config, Rng& rng);

  // Noisy-max oracle over an explicit buffer (one per distribution).
  static absl::StatusOr<AdversaryOracle> WithBuffer(
      const MultiObjectiveProblem& problem, int component,
      const OracleConfig& config,
      std::vector<std::vector<WeightedSample>> buffers);

  absl::StatusOr<OracleAnswer> Query(const DeterministicPredictor& h, Rng& rng);

  const OracleConfig& config() const { return config_; }
  const OracleCounters& counters() const { return counters_; }
  double sigma() const { return sigma_; }
  int64_t buffer_size() const { return buffer_size_; }

 private:
  AdversaryOracle(const MultiObjectiveProblem& problem, int component,
                  const OracleConfig& config)
      : problem_(&problem), component_(component), config_(config) {}

  const MultiObjectiveProblem* problem_;
  int component_;
  OracleConfig config_;
  OracleCounters counters_;
  std::vector<std::vector<WeightedSample>> buffers_;
  int64_t buffer_size_ = 0;
  double sigma_ = 0.0;
};

}  // namespace mogame

#endif  // MOGAME_ORACLES_H_
