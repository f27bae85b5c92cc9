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

#include "mogame/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "absl/strings/str_format.h"

namespace mogame {
namespace {

constexpr uint64_t kMaxDenseRange = 10'000'000;

std::pair<ObjectiveIndex, ObjectiveIndex> ComponentRange(
    const MultiObjectiveProblem& problem, int component) {
  return {problem.objectives().component_begin(component),
          problem.objectives().component_end(component)};
}

// Smallest index in [begin, end) whose loss (0 when absent) is >= threshold.
std::optional<ObjectiveValue> FirstAtLeast(const SparseLosses& losses,
                                           ObjectiveIndex begin,
                                           ObjectiveIndex end,
                                           double threshold) {
  std::optional<ObjectiveValue> best;
  uint64_t visited = 0;
  for (const auto& [index, value] : losses) {
    if (index < begin || index >= end) continue;
    ++visited;
    if (value >= threshold && (!best.has_value() || index < best->index)) {
      best = ObjectiveValue{index, value};
    }
  }
  if (visited < end - begin && 0.0 >= threshold) {
    ObjectiveIndex zero = begin;
    while (losses.contains(zero)) ++zero;
    if (!best.has_value() || zero < best->index) best = ObjectiveValue{zero, 0.0};
  }
  return best;
}

}  // namespace

const char* OracleModeName(OracleMode mode) {
  switch (mode) {
    case OracleMode::kExact:
      return "exact";
    case OracleMode::kEmpirical:
      return "empirical";
    case OracleMode::kNoisyMax:
      return "noisy_max";
    case OracleMode::kWeak:
      return "weak";
  }
  return "unknown";
}

absl::StatusOr<OracleMode> ParseOracleMode(std::string_view name) {
  for (OracleMode mode : {OracleMode::kExact, OracleMode::kEmpirical,
                          OracleMode::kNoisyMax, OracleMode::kWeak}) {
    if (name == OracleModeName(mode)) return mode;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown oracle mode '%s'", std::string(name)));
}

int64_t EmpiricalSampleSize(double epsilon, double delta, double set_size) {
  return static_cast<int64_t>(
      std::ceil(8.0 / (epsilon * epsilon) * std::log(4.0 * set_size / delta)));
}

int64_t NoisyMaxBufferSize(double epsilon, double delta, double set_size,
                           int64_t horizon, double constant) {
  const double size = constant * std::sqrt(static_cast<double>(horizon)) /
                      (epsilon * epsilon) * std::log(set_size / epsilon) *
                      std::pow(std::log(1.0 / (epsilon * delta)), 1.5);
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(size)));
}

double DefaultNoisyMaxSigma(double epsilon, double delta, double set_size) {
  return epsilon / (4.0 * std::sqrt(2.0 * std::log(2.0 * set_size / delta)));
}

std::vector<WeightedSample> DrawBuffer(const TabularDistribution& dist,
                                       int64_t n, Rng& rng) {
  // Aggregated by atom so repeated draws share one entry; ordered for
  // determinism.
  std::map<std::tuple<int, GroupMask, int>, int64_t> counts;
  for (int64_t i = 0; i < n; ++i) {
    const Sample z = dist.Draw(rng);
    ++counts[{z.x.index, z.w, z.y}];
  }
  std::vector<WeightedSample> buffer;
  buffer.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    const auto& [x, w, y] = key;
    buffer.push_back({Sample{DomainPoint{x}, w, y},
                      static_cast<double>(count) / static_cast<double>(n)});
  }
  return buffer;
}

SparseLosses BufferLosses(
    const MultiObjectiveProblem& problem, const DeterministicPredictor& h,
    const std::vector<std::vector<WeightedSample>>& buffers) {
  SparseLosses losses;
  const ObjectiveSet& set = problem.objectives();
  for (int d = 0; d < static_cast<int>(buffers.size()); ++d) {
    for (const auto& entry : buffers[d]) {
      set.ForEachActive(h.at(entry.sample.x), entry.sample, d,
                        [&](ObjectiveIndex index, double value) {
                          losses[index] += entry.weight * value;
                        });
    }
  }
  return losses;
}

absl::StatusOr<AdversaryOracle> AdversaryOracle::Create(
    const MultiObjectiveProblem& problem, int component,
    const OracleConfig& config, Rng& rng) {
  if (component < 0 || component >= problem.objectives().num_components()) {
    return absl::InvalidArgumentError("oracle component out of range");
  }
  auto [begin, end] = ComponentRange(problem, component);
  if (begin == end) return absl::InvalidArgumentError("empty objective set");
  if (!(config.epsilon > 0.0) || !(config.delta > 0.0 && config.delta < 1.0)) {
    return absl::InvalidArgumentError("oracle needs ε > 0 and δ in (0, 1)");
  }
  if (!(config.c > 0.0 && config.c <= 1.0)) {
    return absl::InvalidArgumentError("oracle factor c must lie in (0, 1]");
  }
  if (config.mode == OracleMode::kWeak && !config.reference.has_value()) {
    return absl::InvalidArgumentError(
        "weak oracle needs a minmax reference value");
  }
  if (config.mode == OracleMode::kEmpirical && config.samples < 0) {
    return absl::InvalidArgumentError("sample count must be >= 1");
  }
  AdversaryOracle oracle(problem, component, config);
  if (config.mode == OracleMode::kNoisyMax) {
    if (end - begin > kMaxDenseRange) {
      return absl::ResourceExhaustedError(
          "noisy-max needs a dense pass over the objective set");
    }
    const double size = static_cast<double>(end - begin);
    oracle.buffer_size_ =
        config.buffer_size > 0
            ? config.buffer_size
            : NoisyMaxBufferSize(config.epsilon, config.delta, size,
                                 config.horizon, config.buffer_constant);
    oracle.sigma_ = config.sigma > 0.0
                        ? config.sigma
                        : DefaultNoisyMaxSigma(config.epsilon, config.delta,
                                               size);
    for (const auto& dist : problem.distributions()) {
      oracle.buffers_.push_back(DrawBuffer(dist, oracle.buffer_size_, rng));
      oracle.counters_.samples_drawn += oracle.buffer_size_;
    }
  }
  return oracle;
}

absl::StatusOr<AdversaryOracle> AdversaryOracle::WithBuffer(
    const MultiObjectiveProblem& problem, int component,
    const OracleConfig& config,
    std::vector<std::vector<WeightedSample>> buffers) {
  if (config.mode != OracleMode::kNoisyMax) {
    return absl::InvalidArgumentError("explicit buffers need noisy-max mode");
  }
  if (static_cast<int>(buffers.size()) != problem.num_distributions()) {
    return absl::InvalidArgumentError("one buffer per distribution required");
  }
  for (const auto& b : buffers) {
    if (b.empty()) return absl::InvalidArgumentError("empty buffer");
  }
  auto [begin, end] = ComponentRange(problem, component);
  if (begin == end) return absl::InvalidArgumentError("empty objective set");
  if (end - begin > kMaxDenseRange) {
    return absl::ResourceExhaustedError(
        "noisy-max needs a dense pass over the objective set");
  }
  AdversaryOracle oracle(problem, component, config);
  oracle.buffers_ = std::move(buffers);
  oracle.buffer_size_ = static_cast<int64_t>(oracle.buffers_.front().size());
  oracle.sigma_ = config.sigma;
  return oracle;
}

absl::StatusOr<OracleAnswer> AdversaryOracle::Query(
    const DeterministicPredictor& h, Rng& rng) {
  MOGAME_RETURN_IF_ERROR(problem_->CheckPredictor(h));
  auto [begin, end] = ComponentRange(*problem_, component_);
  ++counters_.oracle_calls;
  switch (config_.mode) {
    case OracleMode::kExact: {
      const ObjectiveValue best =
          MaxOverRange(ExactLossMap(*problem_, h), begin, end);
      return OracleAnswer{best.index, best.value};
    }
    case OracleMode::kEmpirical: {
      const double size = static_cast<double>(end - begin);
      const int64_t n =
          config_.samples > 0
              ? config_.samples
              : EmpiricalSampleSize(config_.epsilon, config_.delta, size);
      std::vector<std::vector<WeightedSample>> buffers;
      for (const auto& dist : problem_->distributions()) {
        buffers.push_back(DrawBuffer(dist, n, rng));
        counters_.samples_drawn += n;
      }
      const ObjectiveValue best =
          MaxOverRange(BufferLosses(*problem_, h, buffers), begin, end);
      return OracleAnswer{best.index, best.value};
    }
    case OracleMode::kWeak: {
      const double threshold = *config_.reference + config_.epsilon;
      auto hit = FirstAtLeast(ExactLossMap(*problem_, h), begin, end, threshold);
      if (!hit.has_value()) return OracleAnswer{std::nullopt, 0.0};
      return OracleAnswer{hit->index, hit->value};
    }
    case OracleMode::kNoisyMax: {
      const SparseLosses losses = BufferLosses(*problem_, h, buffers_);
      std::normal_distribution<double> noise(0.0, 1.0);
      ObjectiveIndex best_index = begin;
      double best_noisy = -std::numeric_limits<double>::infinity();
      double best_value = 0.0;
      for (ObjectiveIndex i = begin; i < end; ++i) {
        auto it = losses.find(i);
        const double value = it == losses.end() ? 0.0 : it->second;
        const double noisy = value + sigma_ * noise(rng);
        if (noisy > best_noisy) {
          best_noisy = noisy;
          best_index = i;
          best_value = value;
        }
      }
      return OracleAnswer{best_index, best_value};
    }
  }
  return absl::InternalError("unhandled oracle mode");
}

}  // namespace mogame
