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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "mogame/audit.h"
#include "mogame/best_response.h"
#include "mogame/dynamics.h"
#include "mogame/hedge.h"
#include "mogame/oracles.h"
#include "mogame/problem.h"

namespace mogame {
namespace {

struct Instance {
  TabularDistribution dist;
  GroupFamily groups;
  LevelGrid grid;
};

// n points, k classes, two overlapping groups, random label laws.
Instance RandomInstance(int n, int k, double lambda, uint64_t seed) {
  Rng rng(seed);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<int> a, b;
  for (int x = 0; x < n; ++x) {
    if (x <= 2 * n / 3) a.push_back(x);
    if (x >= n / 3) b.push_back(x);
  }
  GroupFamily groups = *GroupFamily::Create(n, {a, b});
  std::vector<std::vector<double>> law;
  for (int x = 0; x < n; ++x) {
    std::vector<double> p(k);
    double total = 0.0;
    for (auto& v : p) total += v = gamma(rng);
    for (auto& v : p) v /= total;
    law.push_back(std::move(p));
  }
  auto dist = TabularDistribution::FromGroupFamily(
      groups, std::vector<double>(n, 1.0 / n), std::move(law));
  return {*std::move(dist), std::move(groups), *LevelGrid::Create(lambda)};
}

MultiObjectiveProblem McProblem(const Instance& inst) {
  return *BuildMulticalibrationProblem(inst.dist, inst.groups, inst.grid);
}

void BM_HedgeUpdate(benchmark::State& state) {
  const int64_t n = state.range(0);
  Hedge hedge = *Hedge::Create(n, 1'000'000);
  Rng rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> losses(n);
  for (auto& l : losses) l = u(rng);
  for (auto _ : state) {
    hedge.Update(losses);
    benchmark::DoNotOptimize(hedge);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HedgeUpdate)->RangeMultiplier(8)->Range(64, 32768);

void BM_HedgeUpdateSparse(benchmark::State& state) {
  const int64_t n = 32768, nonzero = state.range(0);
  Hedge hedge = *Hedge::Create(n, 1'000'000);
  std::vector<std::pair<int64_t, double>> losses;
  for (int64_t i = 0; i < nonzero; ++i) losses.push_back({i * (n / nonzero), 0.5});
  for (auto _ : state) {
    hedge.UpdateSparse(losses);
    benchmark::DoNotOptimize(hedge);
  }
  state.SetItemsProcessed(state.iterations() * nonzero);
}
BENCHMARK(BM_HedgeUpdateSparse)->RangeMultiplier(8)->Range(8, 4096);

void BM_BestResponse(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Instance inst = RandomInstance(16, k, 0.5, 2);
  const MultiObjectiveProblem problem = McProblem(inst);
  Rng rng(3);
  std::vector<double> q(problem.objectives().size());
  double total = 0.0;
  for (auto& v : q) total += v = std::uniform_real_distribution<double>()(rng);
  for (auto& v : q) v /= total;
  for (auto _ : state) {
    auto response = BestResponse(problem, q);
    benchmark::DoNotOptimize(response);
  }
  state.counters["objectives"] = static_cast<double>(q.size());
}
BENCHMARK(BM_BestResponse)->Arg(2)->Arg(3);

void BM_ExactOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = RandomInstance(n, 4, 0.25, 4);
  const MultiObjectiveProblem problem = McProblem(inst);
  Rng rng(5);
  OracleConfig config;
  config.mode = OracleMode::kExact;
  AdversaryOracle oracle = *AdversaryOracle::Create(problem, 0, config, rng);
  const DeterministicPredictor h =
      DeterministicPredictor::Constant(n, Prediction::Uniform(1, 4));
  for (auto _ : state) {
    auto answer = oracle.Query(h, rng);
    benchmark::DoNotOptimize(answer);
  }
  state.counters["objectives"] =
      static_cast<double>(problem.objectives().size());
}
BENCHMARK(BM_ExactOracle)->RangeMultiplier(4)->Range(8, 512);

void BM_NrbrRound(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Instance inst = RandomInstance(24, k, 0.5, 6);
  const MultiObjectiveProblem problem = McProblem(inst);
  NrbrConfig config;
  config.epsilon = 0.1;
  config.rounds = 200;
  for (auto _ : state) {
    Rng rng(7);
    auto run = RunNrbr(problem, config, rng);
    benchmark::DoNotOptimize(run);
  }
  state.SetItemsProcessed(state.iterations() * config.rounds);
}
BENCHMARK(BM_NrbrRound)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AuditMulticalibration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = RandomInstance(n, 4, 0.25, 8);
  const DeterministicPredictor h =
      DeterministicPredictor::Constant(n, Prediction::Uniform(1, 4));
  for (auto _ : state) {
    auto report = AuditMulticalibration({&h, 1}, inst.dist, inst.groups, inst.grid);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_AuditMulticalibration)->RangeMultiplier(4)->Range(8, 512);

}  // namespace
}  // namespace mogame

BENCHMARK_MAIN();
