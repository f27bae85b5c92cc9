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

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "mogame/objectives.h"

namespace mogame {

const char* KindName(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kMean:
      return "mean";
    case ObjectiveKind::kMoment:
      return "moment";
    case ObjectiveKind::kAgnostic:
      return "agnostic";
    case ObjectiveKind::kConditional:
      return "conditional";
    case ObjectiveKind::kCompetitive:
      return "competitive";
  }
  return "unknown";
}

std::string DescribeObjective(const LinearObjective& o) {
  std::string out = absl::StrCat(KindName(o.kind));
  if (o.kind == ObjectiveKind::kCompetitive) {
    absl::StrAppend(&out, "(", KindName(o.base_kind), ", baseline ",
                    o.baseline, ")");
  }
  absl::StrAppend(&out, " component=", o.component, " group=", o.group,
                  " bins=(", absl::StrJoin(o.bins, ","), ") coord=", o.coord,
                  " sign=", o.sign > 0 ? "+" : "-");
  if (o.moment_degree > 0) absl::StrAppend(&out, " degree=", o.moment_degree);
  return out;
}

double MomentTarget(int y, double mean_first, int degree) {
  const double centered = (y == 0 ? 1.0 : 0.0) - mean_first;
  const double t = std::pow(centered, degree);
  return std::clamp(t, 0.0, 1.0);
}

absl::StatusOr<std::shared_ptr<const ObjectiveSet>> BuildMulticalibObjectives(
    const GroupFamily& groups, const LevelGrid& grid, int classes,
    const CalibrationSetOptions& options) {
  return BuildCalibrationSet(CalibrationKind::kMean, groups.size(), grid,
                             classes, options);
}

}  // namespace mogame
