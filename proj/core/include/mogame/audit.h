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

// Exact calibration audits over tabular distributions.
//
// Auditors sum gated residuals over the support directly and do not go
// through ObjectiveSet, so they can check it. An ensemble is audited through
// the mean of its members' gated expectations. Every report names the cell
// that attains the maximum.

#ifndef MOGAME_AUDIT_H_
#define MOGAME_AUDIT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "mogame/predictor.h"
#include "mogame/problem.h"
#include "mogame/types.h"

namespace mogame {

struct AuditWitness {
  // Conditional audits: index of the conditioned group.
  int distribution = 0;
  // Group S, or the membership bit for agnostic audits.
  int group = 0;
  // Bin vector of the gating rows.
  std::vector<int> bins;
  int coord = 0;
  // Sign of the violation; +1 when the predictor overshoots.
  int sign = 1;
  // Moment degree a for moment audits, 0 otherwise.
  int degree = 0;

  friend bool operator==(const AuditWitness&, const AuditWitness&) = default;
};

struct AuditReport {
  double value = 0.0;
  AuditWitness witness;
  // Tolerance the guarantee allows on top of ε (e.g. the covariance slack).
  double slack = 0.0;
  // Conditional audits: violation on each conditioned distribution.
  std::vector<double> per_distribution;
};

using Members = std::span<const DeterministicPredictor>;

// max over (S, v, j) of |E[(h(x) − g(y))_j · 1[h(x) ∈ v, x ∈ S]]|.
AuditReport AuditMulticalibration(Members h, const TabularDistribution& dist,
                                  const GroupFamily& groups,
                                  const LevelGrid& grid);

// Same gate with S replaced by the sampled membership bit j ∈ w.
AuditReport AuditAgnostic(Members h, const TabularDistribution& dist,
                          const LevelGrid& grid);

// Ungated calibration on D | j ∈ w for every membership bit j.
absl::StatusOr<AuditReport> AuditConditional(Members h,
                                             const TabularDistribution& dist,
                                             const LevelGrid& grid);

struct MomentAudit {
  AuditReport mean;
  AuditReport moment;
};

// Predictions have rows [h_mu, h_m,1, ..., h_m,r]. Both parts are gated on
// (S, bin of h_mu, bin of h_m,a) for every listed degree a (empty selects
// the even degrees up to r).
MomentAudit AuditMoment(Members h, const TabularDistribution& dist,
                        const GroupFamily& groups, const LevelGrid& grid,
                        std::vector<int> degrees = {});

// Δ = max over (v, j, coord) of |Σ_x px(x) 1[h(x) ∈ v] Cov(1[j ∈ w], g(y) | x)|
// for a deterministic h.
AuditReport CovarianceSlack(const DeterministicPredictor& h,
                            const TabularDistribution& dist,
                            const LevelGrid& grid);

// Dispatches on the problem kind using the problem's own distributions and
// membership bits. Competitive problems fall back to the exact objective
// maximum.
absl::StatusOr<AuditReport> AuditProblem(const MultiObjectiveProblem& problem,
                                         Members h);

std::string AuditReportToJson(const AuditReport& report);

struct BruteForceOptions {
  int max_points = 4;
  double min_step = 0.25;
  int64_t max_predictors = 20'000'000;
};

struct BruteForceResult {
  double value = 0.0;
  DeterministicPredictor argmin;
  // Distance from any prediction coordinate to the grid.
  double slack = 0.0;
  int64_t evaluated = 0;
};

// min over predictors with every row on the step grid of the exact
// multi-objective loss. Ties go to the first predictor in enumeration order
// (point 0 most significant, grid points in SimplexGrid order).
absl::StatusOr<BruteForceResult> BruteForceOpt(
    const MultiObjectiveProblem& problem, double step,
    const BruteForceOptions& options = {});

}  // namespace mogame

#endif  // MOGAME_AUDIT_H_
