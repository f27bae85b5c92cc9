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

#include "mogame/dynamics.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "absl/strings/str_format.h"
#include "mogame/lazy_learner.h"

namespace mogame {
namespace {

absl::Status CheckEpsilonDelta(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    return absl::InvalidArgumentError("epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  return absl::OkStatus();
}

int64_t SampleIndex(const std::vector<double>& p, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  for (size_t i = 0; i < p.size(); ++i) {
    u -= p[i];
    if (u < 0.0) return static_cast<int64_t>(i);
  }
  // Rounding left a sliver of mass; take the last positive entry.
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] > 0.0) return static_cast<int64_t>(i);
  }
  return 0;
}

LearnerKind ResolveLearner(const MultiObjectiveProblem& problem,
                           const NrnrConfig& config) {
  if (config.learner != LearnerKind::kAuto) return config.learner;
  const ObjectiveSet& set = problem.objectives();
  if (set.num_components() == 1 && problem.signature().rows == 1 &&
      set.one_hot_targets() && problem.classes() <= 3) {
    return LearnerKind::kBestResponse;
  }
  return LearnerKind::kLazy;
}

std::vector<PointLazyLearner> MakeLazyLearners(
    const MultiObjectiveProblem& problem, int64_t horizon) {
  std::vector<PointLazyLearner> learners;
  const auto& sig = problem.signature();
  for (int c = 0; c < sig.num_components(); ++c) {
    learners.emplace_back(problem.domain_size(), sig.component_rows[c],
                          sig.classes, horizon);
  }
  return learners;
}

DeterministicPredictor JoinLazy(const std::vector<PointLazyLearner>& learners) {
  std::vector<DeterministicPredictor> parts;
  parts.reserve(learners.size());
  for (const auto& l : learners) parts.push_back(l.PredictAll());
  return parts.size() == 1 ? std::move(parts.front()) : JoinComponents(parts);
}

}  // namespace

int64_t DefaultNrnrRounds(double epsilon, double delta, double set_size,
                          double constant) {
  return static_cast<int64_t>(std::ceil(
      constant / (epsilon * epsilon) * std::log(2.0 * set_size / delta)));
}

int64_t DefaultNrbrRounds(double epsilon, int classes, int active_rows,
                          double constant) {
  const double log_k = std::log(std::max(classes, 2));
  return static_cast<int64_t>(
      std::ceil(constant / (epsilon * epsilon) * active_rows * log_k));
}

absl::StatusOr<NrnrResult> RunNrnr(const MultiObjectiveProblem& problem,
                                   const NrnrConfig& config, Rng& rng,
                                   uint64_t seed) {
  MOGAME_RETURN_IF_ERROR(CheckEpsilonDelta(config.epsilon, config.delta));
  const ObjectiveSet& set = problem.objectives();
  const int components = set.num_components();
  const int64_t T =
      config.rounds > 0
          ? config.rounds
          : DefaultNrnrRounds(config.epsilon, config.delta,
                              static_cast<double>(set.size()),
                              config.horizon_constant);
  const LearnerKind kind = ResolveLearner(problem, config);
  if (kind == LearnerKind::kHedgeOverClass) {
    if (config.hypothesis_class.empty()) {
      return absl::InvalidArgumentError("hedge over class needs a class");
    }
    for (const auto& h : config.hypothesis_class) {
      MOGAME_RETURN_IF_ERROR(problem.CheckPredictor(h));
    }
  }

  std::vector<Hedge> adversaries;
  for (int c = 0; c < components; ++c) {
    MOGAME_ASSIGN_OR_RETURN(
        Hedge hedge,
        Hedge::Create(static_cast<int64_t>(set.component_end(c) -
                                           set.component_begin(c)),
                      T));
    adversaries.push_back(std::move(hedge));
  }
  std::vector<PointLazyLearner> lazy;
  if (kind == LearnerKind::kLazy) lazy = MakeLazyLearners(problem, T);
  std::optional<Hedge> class_hedge;
  if (kind == LearnerKind::kHedgeOverClass) {
    MOGAME_ASSIGN_OR_RETURN(
        class_hedge,
        Hedge::Create(static_cast<int64_t>(config.hypothesis_class.size()), T));
  }

  Transcript transcript;
  transcript.dynamics = DynamicsKind::kNrnr;
  transcript.problem_kind = problem.kind();
  transcript.seed = seed;
  transcript.rounds.reserve(T);
  OracleCounters counters;
  std::vector<DeterministicPredictor> members;
  members.reserve(T);
  const int num_d = problem.num_distributions();

  for (int64_t t = 0; t < T; ++t) {
    std::vector<std::vector<double>> q(components);
    for (int c = 0; c < components; ++c) q[c] = adversaries[c].Distribution();

    DeterministicPredictor h;
    switch (kind) {
      case LearnerKind::kBestResponse: {
        MOGAME_ASSIGN_OR_RETURN(
            MixedPredictor mixed,
            BestResponse(problem, q.front(), config.best_response));
        h = mixed.Realize(rng);
        break;
      }
      case LearnerKind::kLazy:
        h = JoinLazy(lazy);
        break;
      case LearnerKind::kHedgeOverClass:
        h = config.hypothesis_class[SampleIndex(class_hedge->Distribution(),
                                                rng)];
        break;
      case LearnerKind::kAuto:
        MOGAME_CHECK(false, "learner kind must be resolved");
    }

    RoundRecord record;
    record.samples.reserve(num_d);
    for (int d = 0; d < num_d; ++d) {
      record.samples.push_back(problem.distribution(d).Draw(rng));
    }
    counters.samples_drawn += num_d;

    record.realized_losses.assign(components, 0.0);
    std::vector<std::vector<std::pair<int64_t, double>>> sparse(components);
    for (int d = 0; d < num_d; ++d) {
      const Sample& z = record.samples[d];
      set.ForEachActive(h.at(z.x), z, d, [&](ObjectiveIndex i, double value) {
        const int c = set.ComponentOf(i);
        const int64_t local = static_cast<int64_t>(i - set.component_begin(c));
        sparse[c].emplace_back(local, -value);
        record.realized_losses[c] += q[c][local] * value;
      });
    }

    record.choices.resize(components);
    for (int c = 0; c < components; ++c) {
      AdversaryChoice& choice = record.choices[c];
      const auto top = std::max_element(q[c].begin(), q[c].end());
      choice.top = set.component_begin(c) + (top - q[c].begin());
      choice.top_mass = *top;
      if (config.record_mixtures) choice.mixture = q[c];
    }

    switch (kind) {
      case LearnerKind::kLazy:
        for (int c = 0; c < components; ++c) {
          FeedMixture(lazy[c], problem, c, q[c], h);
        }
        break;
      case LearnerKind::kHedgeOverClass: {
        const auto& H = config.hypothesis_class;
        std::vector<double> losses(H.size(), 0.0);
        for (size_t j = 0; j < H.size(); ++j) {
          for (int d = 0; d < num_d; ++d) {
            const Sample& z = record.samples[d];
            set.ForEachActive(H[j].at(z.x), z, d,
                              [&](ObjectiveIndex i, double value) {
                                const int c = set.ComponentOf(i);
                                losses[j] += q[c][i - set.component_begin(c)] *
                                             value / components;
                              });
          }
          losses[j] = std::clamp(losses[j], -1.0, 1.0);
        }
        class_hedge->Update(losses);
        break;
      }
      default:
        break;
    }
    for (int c = 0; c < components; ++c) {
      adversaries[c].UpdateSparse(sparse[c]);
    }

    record.prediction = h;
    members.push_back(std::move(h));
    transcript.rounds.push_back(std::move(record));
  }
  MOGAME_ASSIGN_OR_RETURN(EnsemblePredictor ensemble,
                          EnsemblePredictor::Create(std::move(members)));
  return NrnrResult{std::move(ensemble), std::move(transcript), counters,
                    kind};
}

absl::StatusOr<NrbrResult> RunNrbr(const MultiObjectiveProblem& problem,
                                   const NrbrConfig& config, Rng& rng,
                                   uint64_t seed) {
  if (!(config.epsilon > 0.0 && config.epsilon <= 1.0)) {
    return absl::InvalidArgumentError("epsilon must lie in (0, 1]");
  }
  const ObjectiveSet& set = problem.objectives();
  const int components = set.num_components();
  int64_t T = config.rounds;
  if (T <= 0) {
    int rows = 1;
    for (int c = 0; c < components; ++c) rows = std::max(rows, set.active_rows(c));
    T = DefaultNrbrRounds(config.epsilon, problem.classes(), rows,
                          config.horizon_constant);
  }
  OracleConfig oracle_config = config.oracle;
  oracle_config.horizon = T;
  std::vector<AdversaryOracle> oracles;
  for (int c = 0; c < components; ++c) {
    MOGAME_ASSIGN_OR_RETURN(
        AdversaryOracle oracle,
        AdversaryOracle::Create(problem, c, oracle_config, rng));
    oracles.push_back(std::move(oracle));
  }
  std::vector<PointLazyLearner> learners = MakeLazyLearners(problem, T);

  NrbrResult result;
  result.transcript.dynamics = DynamicsKind::kNrbr;
  result.transcript.problem_kind = problem.kind();
  result.transcript.seed = seed;
  result.transcript.rounds.reserve(T);
  result.iterates.reserve(T);
  for (int64_t t = 0; t < T; ++t) {
    DeterministicPredictor h = JoinLazy(learners);
    RoundRecord record;
    record.choices.resize(components);
    record.realized_losses.assign(components, 0.0);
    for (int c = 0; c < components; ++c) {
      auto answer = oracles[c].Query(h, rng);
      if (!answer.ok()) {
        return absl::Status(
            answer.status().code(),
            absl::StrFormat("round %d, component %d: %s", t, c,
                            answer.status().message()));
      }
      record.realized_losses[c] = answer->estimate;
      if (answer->index.has_value()) {
        record.choices[c].objective = answer->index;
        FeedObjective(learners[c], problem, c, *answer->index, h);
      } else {
        record.choices[c].below_threshold = true;
      }
    }
    record.prediction = h;
    result.iterates.push_back(std::move(h));
    result.transcript.rounds.push_back(std::move(record));
  }
  for (const auto& oracle : oracles) {
    result.counters.oracle_calls += oracle.counters().oracle_calls;
    result.counters.samples_drawn += oracle.counters().samples_drawn;
  }
  return result;
}

}  // namespace mogame
