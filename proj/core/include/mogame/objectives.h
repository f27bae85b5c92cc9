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

// Linear objective families. Every objective has the form
//   ℓ(h, z) = sign · gate(h, x, w) · (h(x)_row − target(y, h))_coord
// and is addressed by a dense index. Sets are implicit: descriptors are
// decoded from the index on demand, so very large families stay cheap as
// long as callers only touch the objectives active at a sample.

#ifndef MOGAME_OBJECTIVES_H_
#define MOGAME_OBJECTIVES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/functional/function_ref.h"
#include "absl/status/statusor.h"
#include "mogame/predictor.h"
#include "mogame/types.h"

namespace mogame {

using ObjectiveIndex = uint64_t;

enum class ObjectiveKind {
  kMean,
  kMoment,
  kAgnostic,
  kConditional,
  kCompetitive,
};

const char* KindName(ObjectiveKind kind);

struct LinearObjective {
  ObjectiveKind kind = ObjectiveKind::kMean;
  // Kind of the wrapped objective when kind is kCompetitive.
  ObjectiveKind base_kind = ObjectiveKind::kMean;
  int component = 0;
  // Group S, identity-group bit i, or distribution index (conditional).
  int group = 0;
  // Calibration kinds: one bin per coordinate of the mean row.
  // Moment family: {bin of h_mu, bin of h_m,a}.
  std::vector<int> bins;
  int coord = 0;
  int sign = 1;
  // Degree a for both components of the moment family, 0 otherwise.
  int moment_degree = 0;
  int baseline = -1;

  friend bool operator==(const LinearObjective&,
                         const LinearObjective&) = default;
};

std::string DescribeObjective(const LinearObjective& objective);

// Linear part of an objective at a point: the gradient with respect to the
// prediction is `coefficient` at (row, coord).
struct Activation {
  int row = 0;
  int coord = 0;
  double coefficient = 0.0;
};

using ActiveVisitor = absl::FunctionRef<void(ObjectiveIndex, double)>;
using GateVisitor = absl::FunctionRef<void(ObjectiveIndex, const Activation&)>;

class ObjectiveSet {
 public:
  virtual ~ObjectiveSet() = default;

  virtual ObjectiveIndex size() const = 0;
  virtual const PredictorSignature& signature() const = 0;

  virtual int num_components() const { return 1; }
  // Objectives of a component occupy [component_begin, component_end).
  virtual ObjectiveIndex component_begin(int component) const {
    return component == 0 ? 0 : size();
  }
  virtual ObjectiveIndex component_end(int component) const {
    return component == 0 ? size() : size();
  }
  virtual int ComponentOf(ObjectiveIndex) const { return 0; }
  // Number of prediction rows a component's objectives can activate.
  virtual int active_rows(int) const { return 1; }

  virtual int num_distributions() const { return 1; }
  virtual int DistributionOf(ObjectiveIndex) const { return 0; }

  virtual bool sign_closed() const = 0;
  virtual bool permutation_closed() const = 0;
  // True when the target is the one-hot label embedding g(y).
  virtual bool one_hot_targets() const = 0;
  // Factor applied to the native objective value (1/2 for competitive).
  virtual double scale() const { return 1.0; }

  virtual LinearObjective Describe(ObjectiveIndex index) const = 0;
  virtual std::optional<ObjectiveIndex> IndexOf(
      const LinearObjective& objective) const = 0;

  // ℓ(h, z) where hx = h(z.x).
  virtual double Evaluate(ObjectiveIndex index, const Prediction& hx,
                          const Sample& z) const = 0;

  // Visits every objective of distribution `d` that can be nonzero at
  // (hx, z). Unvisited objectives evaluate to 0 there. An index may be
  // visited more than once; values add.
  virtual void ForEachActive(const Prediction& hx, const Sample& z, int d,
                             ActiveVisitor visit) const = 0;

  // Learner-side view: every objective of distribution `d` whose gate is
  // open at (hx, x, w), with its linear coefficient.
  virtual void ForEachGate(const Prediction& hx, DomainPoint x, GroupMask w,
                           int d, GateVisitor visit) const = 0;

  // Linear coefficient of one objective at (hx, x, w), or nullopt when the
  // gate is closed.
  virtual std::optional<Activation> Activate(ObjectiveIndex index,
                                             const Prediction& hx,
                                             DomainPoint x,
                                             GroupMask w) const = 0;
};

inline constexpr uint64_t kDefaultMaxObjectives = 1'000'000;

enum class CalibrationKind { kMean, kAgnostic, kConditional };

struct CalibrationSetOptions {
  bool sign_closed = true;
  // Coordinates to include; empty means all k.
  std::vector<int> coords;
  uint64_t max_objectives = kDefaultMaxObjectives;
};

// Objectives indexed by (group, bin vector of the mean row, coord, sign).
// kMean and kAgnostic gate on membership bit `group` of the sample;
// kConditional has no group gate and binds objective group d to
// distribution d.
absl::StatusOr<std::shared_ptr<const ObjectiveSet>> BuildCalibrationSet(
    CalibrationKind kind, int num_groups, const LevelGrid& grid, int classes,
    const CalibrationSetOptions& options = {});

// Multi-calibration objectives for a group family with k classes.
absl::StatusOr<std::shared_ptr<const ObjectiveSet>> BuildMulticalibObjectives(
    const GroupFamily& groups, const LevelGrid& grid, int classes,
    const CalibrationSetOptions& options = {});

struct MomentSetOptions {
  // Degrees a in [1, r]; empty selects the even degrees.
  std::vector<int> degrees;
  bool sign_closed = true;
  uint64_t max_objectives = kDefaultMaxObjectives;
};

// Two-component family for binary moment calibration. Signature rows are
// [h_mu, h_m,1, ..., h_m,r]; component 0 owns row 0, component 1 the rest.
absl::StatusOr<std::shared_ptr<const ObjectiveSet>> BuildMomentSet(
    int num_groups, const LevelGrid& grid, int moments,
    const MomentSetOptions& options = {});

// One objective (ℓ − ℓ(h′)) / 2 per pair of base objective and baseline.
absl::StatusOr<std::shared_ptr<const ObjectiveSet>> AmplifyCompetitive(
    std::shared_ptr<const ObjectiveSet> base,
    std::vector<DeterministicPredictor> baselines);

// Centered moment target (y_1 − mu)^a, clipped to [0, 1] for odd a.
double MomentTarget(int y, double mean_first, int degree);

}  // namespace mogame

#endif  // MOGAME_OBJECTIVES_H_
