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

// Experiment configuration files ("mogame.config/1").
//
//   {"schema": "mogame.config/1",
//    "problem": "mc" | "moment" | "agnostic" | "conditional" | "competitive",
//    "dynamics": "nrnr" | "nrbr",
//    "distribution": "path/to/distribution.json",   // relative to the config
//    "epsilon": 0.1, "delta": 0.05, "lambda": 0.25,
//    "classes": 2,                 // optional; checked against the data
//    "moments": 2,                 // moment problems
//    "oracle": "exact" | "empirical" | "noisy_max" | "weak",
//    "rounds": 0,                  // 0 selects the default horizon
//    "learner": "auto" | "best_response" | "lazy",
//    "realizable": false,          // OPT = 0 when brute force is too large
//    "target": 0.1,                // pass threshold on top of OPT; default ε
//    "round": false,               // majority-round the NRNR ensemble
//    "base_problem": "mc",         // competitive problems
//    "baselines": ["h1.json"]}     // competitive problems

#ifndef MOGAME_TOOLS_CONFIG_H_
#define MOGAME_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "mogame/dynamics.h"
#include "mogame/oracles.h"
#include "mogame/problem.h"
#include "mogame/transcript.h"

namespace mogame::cli {

inline constexpr char kConfigSchema[] = "mogame.config/1";

struct ExperimentConfig {
  // Stem of the config file; names the configuration in tables.
  std::string name;
  ProblemKind problem = ProblemKind::kMulticalibration;
  // Wrapped kind for competitive problems.
  ProblemKind base_problem = ProblemKind::kMulticalibration;
  DynamicsKind dynamics = DynamicsKind::kNrnr;
  std::string distribution_path;
  double epsilon = 0.1;
  double delta = 0.05;
  double lambda = 0.25;
  std::optional<int> classes;
  int moments = 2;
  OracleMode oracle = OracleMode::kExact;
  int64_t rounds = 0;
  LearnerKind learner = LearnerKind::kAuto;
  bool realizable = false;
  std::optional<double> target;
  bool round = false;
  std::vector<std::string> baselines;

  double target_or_default() const { return target.value_or(epsilon); }
};

// Errors read "<path>:<line>: field '<name>': <problem>", with the line of
// the offending key when it can be located.
absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view text,
                                             const std::string& path);
absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path);

absl::StatusOr<ProblemKind> ParseProblemKind(std::string_view name);
absl::StatusOr<DynamicsKind> ParseDynamicsKind(std::string_view name);
absl::StatusOr<LearnerKind> ParseLearnerKind(std::string_view name);
const char* LearnerName(LearnerKind kind);

}  // namespace mogame::cli

#endif  // MOGAME_TOOLS_CONFIG_H_
