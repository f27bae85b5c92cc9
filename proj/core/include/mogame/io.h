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

// JSON file formats for distributions, predictors and objective manifests.
//
// Distribution:
//   {"schema": "mogame.distribution/1", "num_points": n, "num_classes": k,
//    "num_groups": g, "px": [...],
//    "groups": [[x, ...], ...],          // optional, deterministic membership
//    "label_law": [...]}                 // per point
// With "groups", each label_law entry is a k-vector. Without it, each entry
// is a list of branches {"w": [group, ...], "p": prob, "y": [k-vector]}.
//
// Predictor:
//   {"schema": "mogame.predictor/1", "num_classes": k, "rows": r,
//    "predictions": [[[row 0], [row 1], ...], ...]}   // per point

#ifndef MOGAME_IO_H_
#define MOGAME_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "mogame/distribution.h"
#include "mogame/objectives.h"
#include "mogame/predictor.h"
#include "mogame/types.h"

namespace mogame {

inline constexpr char kDistributionSchema[] = "mogame.distribution/1";
inline constexpr char kPredictorSchema[] = "mogame.predictor/1";
inline constexpr char kEnsembleSchema[] = "mogame.ensemble/1";
inline constexpr char kManifestSchema[] = "mogame.objectives/1";

struct LoadedDistribution {
  TabularDistribution distribution;
  // Present when the file lists deterministic groups.
  std::optional<GroupFamily> groups;
};

absl::StatusOr<LoadedDistribution> ParseDistribution(std::string_view text);
// Always written in branch form.
std::string SerializeDistribution(const TabularDistribution& dist);

absl::StatusOr<DeterministicPredictor> ParsePredictor(std::string_view text);
std::string SerializePredictor(const DeterministicPredictor& h);

absl::StatusOr<EnsemblePredictor> ParseEnsemble(std::string_view text);
std::string SerializeEnsemble(const EnsemblePredictor& ensemble);

// One descriptor per objective: index, kind, component, group, bins, coord,
// sign, degree, baseline. Fails when the set exceeds `max_entries`.
absl::StatusOr<std::string> ObjectiveManifest(const ObjectiveSet& set,
                                              uint64_t max_entries = 100'000);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace mogame

#endif  // MOGAME_IO_H_
