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

#include "experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "mogame/dynamics.h"
#include "mogame/io.h"
#include "mogame/regret.h"

namespace mogame::cli {
namespace {

using nlohmann::ordered_json;

std::string Num(double v) { return absl::StrFormat("%.10g", v); }

std::string OptNum(const std::optional<double>& v) {
  return v.has_value() ? Num(*v) : "";
}

ordered_json OptJson(const std::optional<double>& v) {
  return v.has_value() ? ordered_json(*v) : ordered_json(nullptr);
}

absl::StatusOr<DeterministicPredictor> LoadPredictorFile(const std::string& path) {
  MOGAME_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  auto h = ParsePredictor(text);
  if (!h.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", path, h.status().message()));
  }
  return *std::move(h);
}

absl::StatusOr<MultiObjectiveProblem> BuildByKind(ProblemKind kind,
                                                  const LoadedDistribution& loaded,
                                                  const LevelGrid& grid,
                                                  int moments,
                                                  const std::string& path) {
  const TabularDistribution& dist = loaded.distribution;
  auto need_groups = [&]() -> absl::StatusOr<GroupFamily> {
    if (!loaded.groups.has_value()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s: %s problems need a distribution with deterministic 'groups'",
          path, ProblemKindName(kind)));
    }
    return *loaded.groups;
  };
  switch (kind) {
    case ProblemKind::kMulticalibration: {
      MOGAME_ASSIGN_OR_RETURN(GroupFamily groups, need_groups());
      return BuildMulticalibrationProblem(dist, groups, grid);
    }
    case ProblemKind::kMoment: {
      MOGAME_ASSIGN_OR_RETURN(GroupFamily groups, need_groups());
      return BuildMomentProblem(dist, groups, grid, moments);
    }
    case ProblemKind::kAgnostic:
      return BuildAgnosticProblem(dist, grid);
    case ProblemKind::kConditional: {
      MOGAME_ASSIGN_OR_RETURN(GroupFamily groups, need_groups());
      return BuildConditionalProblem(dist, groups, grid);
    }
    case ProblemKind::kCompetitive:
      break;
  }
  return absl::InvalidArgumentError("competitive problems need a base kind");
}

struct Opt {
  double value = 0.0;
  std::string source;
};

Opt EstimateOpt(const MultiObjectiveProblem& problem, bool realizable) {
  if (problem.domain_size() <= BruteForceOptions{}.max_points) {
    auto brute = BruteForceOpt(problem, 0.25);
    if (brute.ok()) return {brute->value, "brute_force"};
  }
  return {0.0, realizable ? "realizable" : "assumed"};
}

// Largest regret over components; components where the query is not
// available are skipped.
std::optional<double> MaxRegret(const MultiObjectiveProblem& problem,
                                const Transcript& transcript,
                                RegretQuery query) {
  std::optional<double> best;
  for (int c = 0; c < problem.objectives().num_components(); ++c) {
    query.component = c;
    auto value = ComputeRegret(problem, transcript, query);
    if (!value.ok() && query.source == RegretSource::kExact &&
        query.player == RegretPlayer::kAdversary) {
      RegretQuery empirical = query;
      empirical.source = RegretSource::kEmpirical;
      value = ComputeRegret(problem, transcript, empirical);
    }
    if (!value.ok()) continue;
    best = best.has_value() ? std::max(*best, value->regret) : value->regret;
  }
  return best;
}

ordered_json AuditJson(const AuditReport& report) {
  return ordered_json::parse(AuditReportToJson(report));
}

}  // namespace

const std::vector<std::string>& RunCsvColumns() {
  static const std::vector<std::string> kColumns = {
      "config",        "problem",       "dynamics",
      "seed",          "rounds",        "epsilon",
      "delta",         "lambda",        "classes",
      "oracle",        "learner",       "audited_loss",
      "opt",           "opt_source",    "target",
      "passed",        "oracle_calls",  "samples_drawn",
      "adversary_regret", "learner_weak_regret"};
  return kColumns;
}

std::string CsvLine(const std::vector<std::string>& cells) {
  std::vector<std::string> quoted;
  quoted.reserve(cells.size());
  for (const auto& c : cells) {
    if (c.find_first_of(",\"\n") == std::string::npos) {
      quoted.push_back(c);
    } else {
      std::string escaped = "\"";
      for (char ch : c) {
        if (ch == '"') escaped += '"';
        escaped += ch;
      }
      quoted.push_back(escaped + "\"");
    }
  }
  return absl::StrJoin(quoted, ",") + "\n";
}

absl::StatusOr<MultiObjectiveProblem> LoadProblem(const ProblemInputs& inputs) {
  MOGAME_ASSIGN_OR_RETURN(std::string text, ReadFile(inputs.distribution_path));
  auto loaded = ParseDistribution(text);
  if (!loaded.ok()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%s: %s", inputs.distribution_path, loaded.status().message()));
  }
  if (inputs.classes.has_value() &&
      *inputs.classes != loaded->distribution.num_classes()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%s: distribution has %d classes but the config declares %d",
        inputs.distribution_path, loaded->distribution.num_classes(),
        *inputs.classes));
  }
  MOGAME_ASSIGN_OR_RETURN(LevelGrid grid, LevelGrid::Create(inputs.lambda));
  if (inputs.kind != ProblemKind::kCompetitive) {
    return BuildByKind(inputs.kind, *loaded, grid, inputs.moments,
                       inputs.distribution_path);
  }
  MOGAME_ASSIGN_OR_RETURN(
      MultiObjectiveProblem base,
      BuildByKind(inputs.base_kind, *loaded, grid, inputs.moments,
                  inputs.distribution_path));
  std::vector<DeterministicPredictor> baselines;
  for (const auto& path : inputs.baselines) {
    MOGAME_ASSIGN_OR_RETURN(DeterministicPredictor h, LoadPredictorFile(path));
    baselines.push_back(std::move(h));
  }
  return BuildCompetitiveProblem(base, std::move(baselines));
}

absl::StatusOr<RunOutcome> RunExperiment(const ExperimentConfig& config,
                                         uint64_t seed) {
  ProblemInputs inputs;
  inputs.kind = config.problem;
  inputs.base_kind = config.base_problem;
  inputs.distribution_path = config.distribution_path;
  inputs.lambda = config.lambda;
  inputs.moments = config.moments;
  inputs.classes = config.classes;
  inputs.baselines = config.baselines;
  MOGAME_ASSIGN_OR_RETURN(MultiObjectiveProblem problem, LoadProblem(inputs));

  RunOutcome out;
  const Opt opt = EstimateOpt(problem, config.realizable);
  out.opt = opt.value;
  out.opt_source = opt.source;
  out.target = config.target_or_default();

  Rng rng(seed);
  Transcript transcript;
  std::vector<DeterministicPredictor> audited;
  std::string oracle_name = "none";
  std::string learner_name = "lazy";
  ordered_json details;
  if (config.dynamics == DynamicsKind::kNrnr) {
    NrnrConfig nrnr;
    nrnr.epsilon = config.epsilon;
    nrnr.delta = config.delta;
    nrnr.rounds = config.rounds;
    nrnr.learner = config.learner;
    MOGAME_ASSIGN_OR_RETURN(NrnrResult run, RunNrnr(problem, nrnr, rng, seed));
    learner_name = LearnerName(run.learner);
    out.oracle_calls = run.counters.oracle_calls;
    out.samples_drawn = run.counters.samples_drawn;
    if (config.round) {
      audited.push_back(MajorityRound(run.ensemble, problem.grid()));
      details["output"] = "majority_rounded";
    } else {
      audited = run.ensemble.members();
      details["output"] = "ensemble";
    }
    transcript = std::move(run.transcript);
  } else {
    NrbrConfig nrbr;
    nrbr.epsilon = config.epsilon;
    nrbr.rounds = config.rounds;
    nrbr.oracle.mode = config.oracle;
    nrbr.oracle.epsilon = config.epsilon;
    nrbr.oracle.delta = config.delta;
    if (config.oracle == OracleMode::kWeak) nrbr.oracle.reference = out.opt;
    oracle_name = OracleModeName(config.oracle);
    MOGAME_ASSIGN_OR_RETURN(NrbrResult run, RunNrbr(problem, nrbr, rng, seed));
    MOGAME_ASSIGN_OR_RETURN(
        FindResult found, Find(problem, run.iterates, config.epsilon,
                               config.delta, FindMode::kSamples, rng));
    out.oracle_calls = run.counters.oracle_calls + found.oracle_calls;
    out.samples_drawn = run.counters.samples_drawn + found.samples_drawn;
    audited.push_back(run.iterates[found.index]);
    details["output"] = "find";
    details["chosen_iterate"] = found.index;
    details["find_estimate"] = found.estimate;
    details["find_samples"] = found.samples_drawn;
    transcript = std::move(run.transcript);
  }
  out.rounds = transcript.size();

  MOGAME_ASSIGN_OR_RETURN(out.audit, AuditProblem(problem, audited));
  out.audited_loss = out.audit.value;
  out.passed = out.audited_loss <= out.target + out.opt;

  RegretQuery adversary;
  adversary.player = RegretPlayer::kAdversary;
  adversary.source = RegretSource::kExact;
  out.adversary_regret = MaxRegret(problem, transcript, adversary);
  RegretQuery learner;
  learner.player = RegretPlayer::kLearner;
  learner.source = RegretSource::kExact;
  learner.kind = RegretKind::kWeak;
  learner.reference = out.opt;
  out.learner_weak_regret = MaxRegret(problem, transcript, learner);

  ordered_json summary;
  summary["config"] = config.name;
  summary["problem"] = ProblemKindName(config.problem);
  if (config.problem == ProblemKind::kCompetitive) {
    summary["base_problem"] = ProblemKindName(config.base_problem);
  }
  summary["dynamics"] = DynamicsName(config.dynamics);
  summary["seed"] = seed;
  summary["rounds"] = out.rounds;
  summary["epsilon"] = config.epsilon;
  summary["delta"] = config.delta;
  summary["lambda"] = config.lambda;
  summary["classes"] = problem.classes();
  summary["objectives"] = problem.objectives().size();
  summary["oracle"] = oracle_name;
  summary["learner"] = learner_name;
  summary["details"] = details;
  summary["audit"] = AuditJson(out.audit);
  summary["audited_loss"] = out.audited_loss;
  summary["opt"] = out.opt;
  summary["opt_source"] = out.opt_source;
  summary["target"] = out.target;
  summary["passed"] = out.passed;
  summary["oracle_calls"] = out.oracle_calls;
  summary["samples_drawn"] = out.samples_drawn;
  summary["regret"] = {{"adversary_standard", OptJson(out.adversary_regret)},
                       {"learner_weak", OptJson(out.learner_weak_regret)}};
  out.summary_json = summary.dump(2) + "\n";
  out.transcript_jsonl = transcript.ToJsonLines(summary.dump());

  out.csv_row = {config.name,
                 ProblemKindName(config.problem),
                 DynamicsName(config.dynamics),
                 absl::StrFormat("%d", seed),
                 absl::StrFormat("%d", out.rounds),
                 Num(config.epsilon),
                 Num(config.delta),
                 Num(config.lambda),
                 absl::StrFormat("%d", problem.classes()),
                 oracle_name,
                 learner_name,
                 Num(out.audited_loss),
                 Num(out.opt),
                 out.opt_source,
                 Num(out.target),
                 out.passed ? "1" : "0",
                 absl::StrFormat("%d", out.oracle_calls),
                 absl::StrFormat("%d", out.samples_drawn),
                 OptNum(out.adversary_regret),
                 OptNum(out.learner_weak_regret)};
  return out;
}

absl::Status WriteRunOutputs(const RunOutcome& outcome, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrFormat("cannot create %s: %s", dir, ec.message()));
  }
  const std::filesystem::path base(dir);
  MOGAME_RETURN_IF_ERROR(
      WriteFile((base / "summary.json").string(), outcome.summary_json));
  MOGAME_RETURN_IF_ERROR(WriteFile((base / "result.csv").string(),
                                   CsvLine(RunCsvColumns()) +
                                       CsvLine(outcome.csv_row)));
  return WriteFile((base / "transcript.jsonl").string(),
                   outcome.transcript_jsonl);
}

namespace {

// Linear interpolation between order statistics.
double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * (sorted.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

}  // namespace

absl::StatusOr<SweepResult> RunSweep(const ExperimentConfig& config,
                                     const SweepOptions& options) {
  if (options.seeds.empty()) {
    return absl::InvalidArgumentError("sweep needs at least one seed");
  }
  const std::vector<int64_t> rounds =
      options.rounds.empty() ? std::vector<int64_t>{config.rounds}
                             : options.rounds;
  struct Job {
    int64_t rounds;
    uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int64_t t : rounds) {
    for (uint64_t s : options.seeds) jobs.push_back({t, s});
  }
  std::vector<absl::StatusOr<RunOutcome>> results(
      jobs.size(), absl::UnknownError("not run"));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      ExperimentConfig c = config;
      c.rounds = jobs[i].rounds;
      results[i] = RunExperiment(c, jobs[i].seed);
    }
  };
  const int workers = std::clamp<int>(options.workers, 1,
                                      static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult out;
  out.runs_csv = CsvLine(RunCsvColumns());
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i].ok()) {
      return absl::Status(
          results[i].status().code(),
          absl::StrFormat("rounds %d, seed %d: %s", jobs[i].rounds,
                          jobs[i].seed, results[i].status().message()));
    }
    out.runs_csv += CsvLine(results[i]->csv_row);
  }

  out.aggregate_csv = CsvLine(
      {"config", "rounds", "runs", "loss_mean", "loss_std", "loss_min",
       "loss_p25", "loss_median", "loss_p75", "loss_max", "oracle_calls_mean",
       "samples_drawn_mean", "pass_rate"});
  const size_t per = options.seeds.size();
  for (size_t r = 0; r < rounds.size(); ++r) {
    std::vector<double> loss;
    double calls = 0.0, samples = 0.0, passed = 0.0;
    int64_t actual_rounds = 0;
    for (size_t i = r * per; i < (r + 1) * per; ++i) {
      loss.push_back(results[i]->audited_loss);
      calls += results[i]->oracle_calls;
      samples += results[i]->samples_drawn;
      passed += results[i]->passed ? 1.0 : 0.0;
      actual_rounds = results[i]->rounds;
    }
    std::sort(loss.begin(), loss.end());
    const double n = static_cast<double>(per);
    const double mean = std::accumulate(loss.begin(), loss.end(), 0.0) / n;
    double var = 0.0;
    for (double v : loss) var += (v - mean) * (v - mean);
    const double stddev = per > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    const double median = Quantile(loss, 0.5);
    out.median_loss.push_back(median);
    out.aggregate_csv += CsvLine(
        {config.name, absl::StrFormat("%d", actual_rounds),
         absl::StrFormat("%d", per), Num(mean), Num(stddev), Num(loss.front()),
         Num(Quantile(loss, 0.25)), Num(median), Num(Quantile(loss, 0.75)),
         Num(loss.back()), Num(calls / n), Num(samples / n), Num(passed / n)});
  }
  return out;
}

absl::StatusOr<std::vector<uint64_t>> ParseSeedList(const std::string& text) {
  std::vector<uint64_t> seeds;
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    std::vector<absl::string_view> range = absl::StrSplit(part, '-');
    uint64_t lo = 0, hi = 0;
    if (range.size() == 1 && absl::SimpleAtoi(range[0], &lo)) {
      seeds.push_back(lo);
    } else if (range.size() == 2 && absl::SimpleAtoi(range[0], &lo) &&
               absl::SimpleAtoi(range[1], &hi) && lo <= hi) {
      for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      return absl::InvalidArgumentError(
          absl::StrFormat("bad seed list '%s'", text));
    }
  }
  if (seeds.empty()) {
    return absl::InvalidArgumentError(absl::StrFormat("bad seed list '%s'", text));
  }
  return seeds;
}

absl::StatusOr<std::vector<int64_t>> ParseIntList(const std::string& text) {
  std::vector<int64_t> values;
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    int64_t v = 0;
    if (!absl::SimpleAtoi(part, &v) || v < 0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("bad integer list '%s'", text));
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace mogame::cli
