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

#include "config.h"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>

#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "mogame/io.h"

namespace mogame::cli {
namespace {

using nlohmann::json;

int LineOfOffset(std::string_view text, size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key" used as an object key, or 0.
int LineOfKey(std::string_view text, std::string_view key) {
  const std::string quoted = absl::StrFormat("\"%s\"", std::string(key));
  size_t pos = 0;
  while ((pos = text.find(quoted, pos)) != std::string_view::npos) {
    size_t after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) {
      ++after;
    }
    if (after < text.size() && text[after] == ':') return LineOfOffset(text, pos);
    pos = after;
  }
  return 0;
}

class FieldReader {
 public:
  FieldReader(const json& j, std::string_view text, const std::string& path)
      : j_(j), text_(text), path_(path) {}

  absl::Status Error(std::string_view field, const std::string& message) const {
    const int line = LineOfKey(text_, field);
    const std::string where =
        line > 0 ? absl::StrFormat("%s:%d", path_, line) : path_;
    return absl::InvalidArgumentError(absl::StrFormat(
        "%s: field '%s': %s", where, std::string(field), message));
  }

  bool Has(const char* field) const { return j_.contains(field); }

  absl::Status String(const char* field, bool required, std::string* out) const {
    if (!j_.contains(field)) {
      return required ? Error(field, "is required") : absl::OkStatus();
    }
    if (!j_[field].is_string()) return Error(field, "must be a string");
    *out = j_[field].get<std::string>();
    return absl::OkStatus();
  }

  absl::Status Number(const char* field, double lo, double hi, bool open_lo,
                      double* out) const {
    if (!j_.contains(field)) return absl::OkStatus();
    if (!j_[field].is_number()) return Error(field, "must be a number");
    const double v = j_[field].get<double>();
    if ((open_lo ? v <= lo : v < lo) || v > hi) {
      return Error(field, absl::StrFormat("must lie in %s%g, %g]",
                                          open_lo ? "(" : "[", lo, hi));
    }
    *out = v;
    return absl::OkStatus();
  }

  absl::Status Integer(const char* field, int64_t lo, int64_t* out) const {
    if (!j_.contains(field)) return absl::OkStatus();
    if (!j_[field].is_number_integer()) return Error(field, "must be an integer");
    const int64_t v = j_[field].get<int64_t>();
    if (v < lo) return Error(field, absl::StrFormat("must be >= %d", lo));
    *out = v;
    return absl::OkStatus();
  }

  absl::Status Bool(const char* field, bool* out) const {
    if (!j_.contains(field)) return absl::OkStatus();
    if (!j_[field].is_boolean()) return Error(field, "must be true or false");
    *out = j_[field].get<bool>();
    return absl::OkStatus();
  }

  // Reads a string field and maps it through parse; unknown values name
  // the accepted set.
  template <typename T>
  absl::Status Enum(const char* field, bool required,
                    const std::function<absl::StatusOr<T>(std::string_view)>& parse,
                    const std::vector<std::string>& accepted, T* out) const {
    std::string value;
    MOGAME_RETURN_IF_ERROR(String(field, required, &value));
    if (!j_.contains(field)) return absl::OkStatus();
    auto parsed = parse(value);
    if (!parsed.ok()) {
      return Error(field, absl::StrFormat("unknown value '%s' (expected %s)",
                                          value, absl::StrJoin(accepted, ", ")));
    }
    *out = *parsed;
    return absl::OkStatus();
  }

 private:
  const json& j_;
  std::string_view text_;
  const std::string& path_;
};

const std::vector<std::string> kKnownFields = {
    "schema",  "problem", "base_problem", "dynamics", "distribution",
    "epsilon", "delta",   "lambda",       "classes",  "moments",
    "oracle",  "rounds",  "learner",      "realizable", "target",
    "round",   "baselines"};

}  // namespace

absl::StatusOr<ProblemKind> ParseProblemKind(std::string_view name) {
  for (ProblemKind kind :
       {ProblemKind::kMulticalibration, ProblemKind::kMoment,
        ProblemKind::kAgnostic, ProblemKind::kConditional,
        ProblemKind::kCompetitive}) {
    if (name == ProblemKindName(kind)) return kind;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown problem '%s'", std::string(name)));
}

absl::StatusOr<DynamicsKind> ParseDynamicsKind(std::string_view name) {
  if (name == "nrnr") return DynamicsKind::kNrnr;
  if (name == "nrbr") return DynamicsKind::kNrbr;
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown dynamics '%s'", std::string(name)));
}

const char* LearnerName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kAuto:
      return "auto";
    case LearnerKind::kBestResponse:
      return "best_response";
    case LearnerKind::kLazy:
      return "lazy";
    case LearnerKind::kHedgeOverClass:
      return "hedge_over_class";
  }
  return "unknown";
}

absl::StatusOr<LearnerKind> ParseLearnerKind(std::string_view name) {
  for (LearnerKind kind : {LearnerKind::kAuto, LearnerKind::kBestResponse,
                           LearnerKind::kLazy}) {
    if (name == LearnerName(kind)) return kind;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown learner '%s'", std::string(name)));
}

absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view text,
                                             const std::string& path) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s:%d: malformed JSON (%s)", path,
                        LineOfOffset(text, e.byte == 0 ? 0 : e.byte - 1),
                        e.what()));
  }
  if (!j.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s:1: config must be a JSON object", path));
  }
  const FieldReader read(j, text, path);
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKnownFields.begin(), kKnownFields.end(), key) ==
        kKnownFields.end()) {
      return read.Error(key, "unknown field");
    }
  }
  std::string schema;
  MOGAME_RETURN_IF_ERROR(read.String("schema", true, &schema));
  if (schema != kConfigSchema) {
    return read.Error("schema", absl::StrFormat("must be \"%s\"", kConfigSchema));
  }

  ExperimentConfig config;
  config.name = std::filesystem::path(path).stem().string();
  const std::vector<std::string> problems = {"mc", "moment", "agnostic",
                                             "conditional", "competitive"};
  MOGAME_RETURN_IF_ERROR(read.Enum<ProblemKind>(
      "problem", true, ParseProblemKind, problems, &config.problem));
  MOGAME_RETURN_IF_ERROR(read.Enum<DynamicsKind>(
      "dynamics", true, ParseDynamicsKind, {"nrnr", "nrbr"}, &config.dynamics));
  MOGAME_RETURN_IF_ERROR(read.Enum<OracleMode>(
      "oracle", false, ParseOracleMode,
      {"exact", "empirical", "noisy_max", "weak"}, &config.oracle));
  MOGAME_RETURN_IF_ERROR(read.Enum<LearnerKind>(
      "learner", false, ParseLearnerKind, {"auto", "best_response", "lazy"},
      &config.learner));

  MOGAME_RETURN_IF_ERROR(
      read.String("distribution", true, &config.distribution_path));
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  if (std::filesystem::path(config.distribution_path).is_relative()) {
    config.distribution_path = (base / config.distribution_path).string();
  }

  MOGAME_RETURN_IF_ERROR(read.Number("epsilon", 0.0, 1.0, true, &config.epsilon));
  MOGAME_RETURN_IF_ERROR(read.Number("delta", 0.0, 1.0, true, &config.delta));
  if (config.delta >= 1.0) return read.Error("delta", "must be < 1");
  MOGAME_RETURN_IF_ERROR(read.Number("lambda", 0.0, 1.0, true, &config.lambda));
  int64_t integer = 0;
  if (read.Has("classes")) {
    MOGAME_RETURN_IF_ERROR(read.Integer("classes", 2, &integer));
    config.classes = static_cast<int>(integer);
  }
  integer = config.moments;
  MOGAME_RETURN_IF_ERROR(read.Integer("moments", 2, &integer));
  config.moments = static_cast<int>(integer);
  MOGAME_RETURN_IF_ERROR(read.Integer("rounds", 0, &config.rounds));
  MOGAME_RETURN_IF_ERROR(read.Bool("realizable", &config.realizable));
  MOGAME_RETURN_IF_ERROR(read.Bool("round", &config.round));
  if (read.Has("target")) {
    double target = 0.0;
    MOGAME_RETURN_IF_ERROR(read.Number("target", 0.0, 2.0, false, &target));
    config.target = target;
  }

  if (config.problem == ProblemKind::kCompetitive) {
    MOGAME_RETURN_IF_ERROR(read.Enum<ProblemKind>(
        "base_problem", true, ParseProblemKind,
        {"mc", "agnostic", "conditional"}, &config.base_problem));
    if (config.base_problem == ProblemKind::kCompetitive ||
        config.base_problem == ProblemKind::kMoment) {
      return read.Error("base_problem", "must be mc, agnostic or conditional");
    }
    if (!j.contains("baselines") || !j["baselines"].is_array() ||
        j["baselines"].empty()) {
      return read.Error("baselines", "must be a nonempty list of predictor files");
    }
    for (const auto& b : j["baselines"]) {
      if (!b.is_string()) {
        return read.Error("baselines", "entries must be file paths");
      }
      std::filesystem::path p = b.get<std::string>();
      config.baselines.push_back(p.is_relative() ? (base / p).string()
                                                 : p.string());
    }
  } else if (read.Has("baselines") || read.Has("base_problem")) {
    return read.Error(read.Has("baselines") ? "baselines" : "base_problem",
                      "only applies to competitive problems");
  }
  if (config.dynamics == DynamicsKind::kNrnr &&
      config.oracle != OracleMode::kExact && read.Has("oracle")) {
    return read.Error("oracle", "only applies to nrbr dynamics");
  }
  if (config.dynamics == DynamicsKind::kNrbr && read.Has("learner")) {
    return read.Error("learner", "only applies to nrnr dynamics");
  }
  if (config.round && config.dynamics != DynamicsKind::kNrnr) {
    return read.Error("round", "only applies to nrnr dynamics");
  }
  return config;
}

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path) {
  MOGAME_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseConfig(text, path);
}

}  // namespace mogame::cli
