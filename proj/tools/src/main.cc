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

// mogame: run, audit and sweep multi-calibration experiments.
//
// Exit codes: 0 success, 1 audited loss above target, 2 invalid input,
// 3 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "config.h"
#include "experiment.h"
#include "mogame/audit.h"
#include "mogame/io.h"
#include "selftest.h"

namespace {

using namespace mogame;
using namespace mogame::cli;

constexpr int kExitMissed = 1;
constexpr int kExitInput = 2;
constexpr int kExitRuntime = 3;

int Report(const absl::Status& status) {
  std::cerr << "mogame: " << status.message() << "\n";
  return status.code() == absl::StatusCode::kInvalidArgument ||
                 status.code() == absl::StatusCode::kNotFound
             ? kExitInput
             : kExitRuntime;
}

int DefaultWorkers() {
  int workers = 0;
  const char* env = std::getenv("MOGAME_WORKERS");
  if (env != nullptr && absl::SimpleAtoi(env, &workers) && workers > 0) {
    return workers;
  }
  return 1;
}

int CmdRun(const std::string& config_path, uint64_t seed,
           const std::string& out_dir) {
  auto config = LoadConfig(config_path);
  if (!config.ok()) return Report(config.status());
  auto outcome = RunExperiment(*config, seed);
  if (!outcome.ok()) return Report(outcome.status());
  if (auto s = WriteRunOutputs(*outcome, out_dir); !s.ok()) {
    std::cerr << "mogame: " << s.message() << "\n";
    return kExitRuntime;
  }
  std::cout << CsvLine(RunCsvColumns()) << CsvLine(outcome->csv_row);
  return outcome->passed ? 0 : kExitMissed;
}

int CmdAudit(const std::string& predictor_path,
             const std::string& distribution_path, const std::string& kind,
             double lambda, int moments, const std::string& out_path) {
  auto parsed_kind = ParseProblemKind(kind);
  if (!parsed_kind.ok() || *parsed_kind == ProblemKind::kCompetitive) {
    std::cerr << "mogame: --kind must be mc, moment, agnostic or conditional\n";
    return kExitInput;
  }
  ProblemInputs inputs;
  inputs.kind = *parsed_kind;
  inputs.distribution_path = distribution_path;
  inputs.lambda = lambda;
  inputs.moments = moments;
  auto problem = LoadProblem(inputs);
  if (!problem.ok()) return Report(problem.status());

  auto text = ReadFile(predictor_path);
  if (!text.ok()) return Report(text.status());
  std::vector<DeterministicPredictor> members;
  if (auto h = ParsePredictor(*text); h.ok()) {
    members.push_back(*std::move(h));
  } else if (auto ensemble = ParseEnsemble(*text); ensemble.ok()) {
    members = ensemble->members();
  } else {
    return Report(absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", predictor_path, h.status().message())));
  }
  for (const auto& h : members) {
    if (auto s = problem->CheckPredictor(h); !s.ok()) {
      return Report(absl::InvalidArgumentError(
          absl::StrFormat("%s: %s", predictor_path, s.message())));
    }
  }
  auto report = AuditProblem(*problem, members);
  if (!report.ok()) return Report(report.status());
  const std::string json = AuditReportToJson(*report) + "\n";
  std::cout << json;
  if (!out_path.empty()) {
    if (auto s = WriteFile(out_path, json); !s.ok()) return Report(s);
  }
  return 0;
}

int CmdSweep(const std::string& config_path, const std::string& seeds,
             const std::string& rounds, int workers, const std::string& out_dir) {
  auto config = LoadConfig(config_path);
  if (!config.ok()) return Report(config.status());
  SweepOptions options;
  auto seed_list = ParseSeedList(seeds);
  if (!seed_list.ok()) return Report(seed_list.status());
  options.seeds = *std::move(seed_list);
  if (!rounds.empty()) {
    auto round_list = ParseIntList(rounds);
    if (!round_list.ok()) return Report(round_list.status());
    options.rounds = *std::move(round_list);
  }
  options.workers = workers > 0 ? workers : DefaultWorkers();
  auto result = RunSweep(*config, options);
  if (!result.ok()) return Report(result.status());
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::filesystem::path base(out_dir);
  for (const auto& [name, contents] :
       {std::pair{"runs.csv", &result->runs_csv},
        std::pair{"aggregate.csv", &result->aggregate_csv}}) {
    if (auto s = WriteFile((base / name).string(), *contents); !s.ok()) {
      std::cerr << "mogame: " << s.message() << "\n";
      return kExitRuntime;
    }
  }
  std::cout << result->aggregate_csv;
  return 0;
}

int CmdSelftest() {
  int failed = 0;
  for (const auto& check : RunSelftest()) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": "
              << check.detail << "\n";
    if (!check.passed) ++failed;
  }
  return failed == 0 ? 0 : kExitMissed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective learning and multi-calibration experiments"};
  app.require_subcommand(1);

  std::string config_path, out, seeds = "0-9", rounds;
  uint64_t seed = 0;
  int parallel = 0;

  auto* run = app.add_subcommand("run", "Run one configuration with one seed");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--out", out, "Output directory")->required();

  std::string predictor, distribution, kind = "mc";
  double lambda = 0.25;
  int moments = 2;
  auto* audit = app.add_subcommand("audit", "Audit a predictor exactly");
  audit->add_option("--predictor", predictor, "Predictor or ensemble file")
      ->required();
  audit->add_option("--distribution", distribution, "Distribution file")
      ->required();
  audit->add_option("--kind", kind, "mc, moment, agnostic or conditional");
  audit->add_option("--lambda", lambda, "Level-set width");
  audit->add_option("--moments", moments, "Moment rows for moment audits");
  audit->add_option("--out", out, "Also write the report here");

  auto* sweep = app.add_subcommand("sweep", "Run a configuration over seeds");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--seeds", seeds, "Seed range a-b or list a,b,c");
  sweep->add_option("--rounds", rounds, "Comma-separated round overrides");
  sweep->add_option("--parallel", parallel,
                    "Worker threads (default: MOGAME_WORKERS or 1)");
  sweep->add_option("--out", out, "Output directory")->required();

  auto* selftest = app.add_subcommand("selftest", "Check built-in invariants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (run->parsed()) return CmdRun(config_path, seed, out);
  if (audit->parsed()) {
    return CmdAudit(predictor, distribution, kind, lambda, moments, out);
  }
  if (sweep->parsed()) return CmdSweep(config_path, seeds, rounds, parallel, out);
  if (selftest->parsed()) return CmdSelftest();
  return kExitInput;
}
