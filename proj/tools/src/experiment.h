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

#ifndef MOGAME_TOOLS_EXPERIMENT_H_
#define MOGAME_TOOLS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "config.h"
#include "mogame/audit.h"
#include "mogame/problem.h"

namespace mogame::cli {

// Columns of result.csv and runs.csv, in order.
const std::vector<std::string>& RunCsvColumns();

struct ProblemInputs {
  ProblemKind kind = ProblemKind::kMulticalibration;
  ProblemKind base_kind = ProblemKind::kMulticalibration;
  std::string distribution_path;
  double lambda = 0.25;
  int moments = 2;
  std::optional<int> classes;
  std::vector<std::string> baselines;
};

absl::StatusOr<MultiObjectiveProblem> LoadProblem(const ProblemInputs& inputs);

struct RunOutcome {
  double audited_loss = 0.0;
  AuditReport audit;
  double opt = 0.0;
  // "brute_force", "realizable" or "assumed".
  std::string opt_source;
  double target = 0.0;
  bool passed = false;
  int64_t rounds = 0;
  int64_t oracle_calls = 0;
  int64_t samples_drawn = 0;
  // Largest value over components; empty when no component admits it.
  std::optional<double> adversary_regret;
  std::optional<double> learner_weak_regret;

  std::string summary_json;
  std::string transcript_jsonl;
  // Values in RunCsvColumns() order.
  std::vector<std::string> csv_row;
};

absl::StatusOr<RunOutcome> RunExperiment(const ExperimentConfig& config,
                                         uint64_t seed);

// Writes summary.json, result.csv and transcript.jsonl under dir.
absl::Status WriteRunOutputs(const RunOutcome& outcome, const std::string& dir);

std::string CsvLine(const std::vector<std::string>& cells);

struct SweepOptions {
  std::vector<uint64_t> seeds;
  // Round overrides; empty keeps the config's value.
  std::vector<int64_t> rounds;
  int workers = 1;
};

struct SweepResult {
  std::string runs_csv;
  std::string aggregate_csv;
  // One entry per rounds value, in SweepOptions order.
  std::vector<double> median_loss;
};

absl::StatusOr<SweepResult> RunSweep(const ExperimentConfig& config,
                                     const SweepOptions& options);

// Parses "0-9" or "1,4,7".
absl::StatusOr<std::vector<uint64_t>> ParseSeedList(const std::string& text);
absl::StatusOr<std::vector<int64_t>> ParseIntList(const std::string& text);

}  // namespace mogame::cli

#endif  // MOGAME_TOOLS_EXPERIMENT_H_
