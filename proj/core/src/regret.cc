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

#include "mogame/regret.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/strings/str_format.h"
#include "mogame/best_response.h"

namespace mogame {
namespace {

constexpr int64_t kMaxFixedActions = 100'000;

// Scores the learner's per-round loss at single points, which is all that
// fixed-action comparisons need because every loss is a sum over points.
class RoundScorer {
 public:
  RoundScorer(const MultiObjectiveProblem& problem,
              const Transcript& transcript, const RegretQuery& query)
      : problem_(problem),
        set_(problem.objectives()),
        transcript_(transcript),
        query_(query),
        begin_(set_.component_begin(query.component)),
        end_(set_.component_end(query.component)) {
    atoms_.resize(problem.num_distributions());
    for (int d = 0; d < problem.num_distributions(); ++d) {
      atoms_[d].resize(problem.domain_size());
      for (const auto& atom : problem.distribution(d).atoms()) {
        atoms_[d][atom.sample.x.index].push_back(atom);
      }
    }
  }

  absl::Status Validate() const {
    const bool nrnr = transcript_.dynamics == DynamicsKind::kNrnr;
    for (size_t t = 0; t < transcript_.rounds.size(); ++t) {
      const RoundRecord& r = transcript_.rounds[t];
      if (static_cast<int>(r.choices.size()) <= query_.component) {
        return absl::InvalidArgumentError(
            absl::StrFormat("round %d has no choice for component %d", t,
                            query_.component));
      }
      if (query_.source == RegretSource::kEmpirical &&
          static_cast<int>(r.samples.size()) != problem_.num_distributions()) {
        return absl::FailedPreconditionError(
            "empirical regret needs one recorded sample per distribution");
      }
      if (nrnr && r.choices[query_.component].mixture.size() != end_ - begin_) {
        return absl::FailedPreconditionError(
            "regret of a no-regret adversary needs recorded mixtures");
      }
    }
    return absl::OkStatus();
  }

  // Points whose loss can be nonzero in round t.
  std::vector<int> Points(int64_t t) const {
    std::vector<int> points;
    if (query_.source == RegretSource::kExact) {
      points.resize(problem_.domain_size());
      for (int x = 0; x < problem_.domain_size(); ++x) points[x] = x;
    } else {
      for (const auto& z : transcript_.rounds[t].samples) {
        points.push_back(z.x.index);
      }
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
    }
    return points;
  }

  // Learner's loss in round t from point x when it predicts hx there.
  double At(int64_t t, DomainPoint x, const Prediction& hx) const {
    const RoundRecord& r = transcript_.rounds[t];
    const AdversaryChoice& choice = r.choices[query_.component];
    double total = 0.0;
    auto score = [&](const Sample& z, int d, double mass) {
      if (choice.objective.has_value()) {
        if (set_.DistributionOf(*choice.objective) == d) {
          total += mass * set_.Evaluate(*choice.objective, hx, z);
        }
      } else if (!choice.mixture.empty()) {
        set_.ForEachActive(hx, z, d, [&](ObjectiveIndex i, double value) {
          if (i < begin_ || i >= end_) return;
          total += mass * choice.mixture[i - begin_] * value;
        });
      }
    };
    for (int d = 0; d < problem_.num_distributions(); ++d) {
      if (query_.source == RegretSource::kExact) {
        for (const auto& atom : atoms_[d][x.index]) {
          score(atom.sample, d, atom.mass);
        }
      } else if (r.samples[d].x == x) {
        score(r.samples[d], d, 1.0);
      }
    }
    return total;
  }

  double Realized() const {
    double total = 0.0;
    for (int64_t t = 0; t < transcript_.size(); ++t) {
      const auto& h = transcript_.rounds[t].prediction;
      for (int x : Points(t)) total += At(t, DomainPoint{x}, h.at(DomainPoint{x}));
    }
    return total;
  }

  // Σ_x min over actions a of Σ_t loss_t(x, h^t(x) with the component's
  // rows replaced by a).
  double BestFixed(const std::vector<std::vector<double>>& actions) const {
    const int n = problem_.domain_size();
    std::vector<std::vector<double>> cum(n,
                                         std::vector<double>(actions.size()));
    for (int64_t t = 0; t < transcript_.size(); ++t) {
      const auto& h = transcript_.rounds[t].prediction;
      for (int x : Points(t)) {
        for (size_t a = 0; a < actions.size(); ++a) {
          cum[x][a] +=
              At(t, DomainPoint{x}, Splice(h.at(DomainPoint{x}), actions[a]));
        }
      }
    }
    double total = 0.0;
    for (int x = 0; x < n; ++x) {
      total += *std::min_element(cum[x].begin(), cum[x].end());
    }
    return total;
  }

  double BestComparator(
      std::span<const DeterministicPredictor> comparators) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : comparators) {
      double total = 0.0;
      for (int64_t t = 0; t < transcript_.size(); ++t) {
        const auto& h = transcript_.rounds[t].prediction;
        for (int x : Points(t)) {
          const DomainPoint p{x};
          total += At(t, p, Splice(h.at(p), ComponentRows(g.at(p))));
        }
      }
      best = std::min(best, total);
    }
    return best;
  }

  std::vector<double> ComponentRows(const Prediction& p) const {
    const auto& sig = problem_.signature();
    const int k = sig.classes;
    const int first = sig.first_row(query_.component);
    const int rows = sig.component_rows[query_.component];
    auto v = p.values();
    return std::vector<double>(v.begin() + first * k,
                               v.begin() + (first + rows) * k);
  }

  Prediction Splice(const Prediction& hx,
                    const std::vector<double>& rows) const {
    const int k = hx.classes();
    const int first = problem_.signature().first_row(query_.component);
    std::vector<double> values(hx.values().begin(), hx.values().end());
    std::copy(rows.begin(), rows.end(), values.begin() + first * k);
    return Prediction::FromTrusted(hx.rows(), k, std::move(values));
  }

 private:
  const MultiObjectiveProblem& problem_;
  const ObjectiveSet& set_;
  const Transcript& transcript_;
  const RegretQuery& query_;
  ObjectiveIndex begin_;
  ObjectiveIndex end_;
  std::vector<std::vector<std::vector<TabularDistribution::Atom>>> atoms_;
};

absl::StatusOr<std::vector<std::vector<double>>> FixedActions(
    int classes, int rows, double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    return absl::InvalidArgumentError("grid step must lie in (0, 1]");
  }
  const int resolution = static_cast<int>(std::lround(1.0 / step));
  const auto grid = SimplexGrid(classes, resolution);
  double count = std::pow(static_cast<double>(grid.size()), rows);
  if (count > kMaxFixedActions) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "%g fixed actions exceed the cap of %d; use a coarser grid", count,
        kMaxFixedActions));
  }
  std::vector<std::vector<double>> actions = {{}};
  for (int r = 0; r < rows; ++r) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : actions) {
      for (const auto& p : grid) {
        auto a = prefix;
        a.insert(a.end(), p.begin(), p.end());
        next.push_back(std::move(a));
      }
    }
    actions = std::move(next);
  }
  return actions;
}

// max_ℓ Σ_t ℓ(h^t) over the component, unplayed objectives counting 0.
double AdversaryBestFixed(const MultiObjectiveProblem& problem,
                          const Transcript& transcript,
                          const RegretQuery& query) {
  const ObjectiveSet& set = problem.objectives();
  const ObjectiveIndex begin = set.component_begin(query.component);
  const ObjectiveIndex end = set.component_end(query.component);
  SparseLosses cum;
  auto add = [&](ObjectiveIndex i, double value) {
    if (i >= begin && i < end) cum[i] += value;
  };
  for (const auto& r : transcript.rounds) {
    if (query.source == RegretSource::kExact) {
      AccumulateExactLosses(problem, r.prediction, 1.0, add);
    } else {
      for (int d = 0; d < static_cast<int>(r.samples.size()); ++d) {
        const Sample& z = r.samples[d];
        set.ForEachActive(r.prediction.at(z.x), z, d, add);
      }
    }
  }
  return MaxOverRange(cum, begin, end).value;
}

}  // namespace

absl::StatusOr<RegretValue> ComputeRegret(const MultiObjectiveProblem& problem,
                                          const Transcript& transcript,
                                          const RegretQuery& query) {
  const ObjectiveSet& set = problem.objectives();
  if (query.component < 0 || query.component >= set.num_components()) {
    return absl::InvalidArgumentError("component out of range");
  }
  if (transcript.rounds.empty()) {
    return absl::InvalidArgumentError("transcript has no rounds");
  }
  if (query.kind == RegretKind::kWeak && !query.reference.has_value()) {
    return absl::InvalidArgumentError("weak regret needs a minmax reference");
  }
  if (query.source == RegretSource::kEmpirical &&
      transcript.dynamics == DynamicsKind::kNrbr) {
    return absl::FailedPreconditionError(
        "best-response transcripts carry no samples; use exact regret");
  }
  RoundScorer scorer(problem, transcript, query);
  MOGAME_RETURN_IF_ERROR(scorer.Validate());

  RegretValue out;
  out.rounds = transcript.size();
  out.realized = scorer.Realized();
  const double T = static_cast<double>(out.rounds);
  if (query.kind == RegretKind::kWeak) {
    out.comparator = T * *query.reference;
    out.regret = query.player == RegretPlayer::kLearner
                     ? out.realized - out.comparator
                     : out.comparator - out.realized;
    return out;
  }
  if (query.player == RegretPlayer::kAdversary) {
    out.comparator = AdversaryBestFixed(problem, transcript, query);
    out.regret = out.comparator - out.realized;
    return out;
  }
  if (!query.comparators.empty()) {
    for (const auto& g : query.comparators) {
      MOGAME_RETURN_IF_ERROR(problem.CheckPredictor(g));
    }
    out.comparator = scorer.BestComparator(query.comparators);
  } else {
    const auto& sig = problem.signature();
    MOGAME_ASSIGN_OR_RETURN(
        auto actions,
        FixedActions(sig.classes, sig.component_rows[query.component],
                     query.grid_step));
    out.comparator = scorer.BestFixed(actions);
  }
  out.regret = out.realized - out.comparator;
  return out;
}

}  // namespace mogame
