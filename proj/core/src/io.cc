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

#include "mogame/io.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_format.h"
#include "json.hpp"

namespace mogame {
namespace {

using nlohmann::json;

absl::StatusOr<json> Parse(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("malformed JSON");
  if (!j.is_object()) {
    return absl::InvalidArgumentError("top-level JSON value must be an object");
  }
  return j;
}

// Prefixes a validation error from a constructor with the field it came from.
template <typename T>
absl::StatusOr<T> InField(absl::StatusOr<T> value, const char* field) {
  if (value.ok()) return value;
  return absl::Status(value.status().code(),
                      absl::StrFormat("field '%s': %s", field,
                                      value.status().message()));
}

absl::Status CheckSchema(const json& j, const char* expected) {
  auto it = j.find("schema");
  if (it == j.end() || !it->is_string() || *it != expected) {
    return absl::InvalidArgumentError(
        absl::StrFormat("field 'schema' must be \"%s\"", expected));
  }
  return absl::OkStatus();
}

absl::StatusOr<int> IntField(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_number_integer()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("field '%s' must be an integer", name));
  }
  return it->get<int>();
}

absl::StatusOr<std::vector<double>> Vector(const json& j,
                                           const std::string& where) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must be an array of numbers", where));
  }
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s must be an array of numbers", where));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

absl::StatusOr<GroupMask> MaskOf(const json& j, int num_groups,
                                 const std::string& where) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must list group indices", where));
  }
  GroupMask mask = 0;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0 ||
        v.get<int>() >= num_groups) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s has a group index outside [0, %d)", where,
                          num_groups));
    }
    mask |= GroupMask{1} << v.get<int>();
  }
  return mask;
}

json PredictorJson(const DeterministicPredictor& h) {
  json j;
  j["schema"] = kPredictorSchema;
  j["num_classes"] = h.classes();
  j["rows"] = h.rows();
  json predictions = json::array();
  for (const auto& p : h.table()) {
    json rows = json::array();
    for (int r = 0; r < p.rows(); ++r) {
      auto row = p.row(r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    predictions.push_back(std::move(rows));
  }
  j["predictions"] = std::move(predictions);
  return j;
}

absl::StatusOr<DeterministicPredictor> PredictorFromJson(const json& j) {
  MOGAME_RETURN_IF_ERROR(CheckSchema(j, kPredictorSchema));
  MOGAME_ASSIGN_OR_RETURN(int k, IntField(j, "num_classes"));
  MOGAME_ASSIGN_OR_RETURN(int rows, IntField(j, "rows"));
  auto it = j.find("predictions");
  if (it == j.end() || !it->is_array() || it->empty()) {
    return absl::InvalidArgumentError(
        "field 'predictions' must be a nonempty array");
  }
  std::vector<Prediction> table;
  for (size_t x = 0; x < it->size(); ++x) {
    const json& entry = (*it)[x];
    if (!entry.is_array() || static_cast<int>(entry.size()) != rows) {
      return absl::InvalidArgumentError(
          absl::StrFormat("predictions[%d] must hold %d rows", x, rows));
    }
    std::vector<std::vector<double>> values;
    for (const auto& row : entry) {
      MOGAME_ASSIGN_OR_RETURN(
          auto v, Vector(row, absl::StrFormat("predictions[%d] row", x)));
      if (static_cast<int>(v.size()) != k) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "predictions[%d] rows must have %d entries", x, k));
      }
      values.push_back(std::move(v));
    }
    auto p = Prediction::FromRows(values);
    if (!p.ok()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "predictions[%d]: %s", x, p.status().message()));
    }
    table.push_back(*std::move(p));
  }
  return InField(DeterministicPredictor::Create(std::move(table)),
                 "predictions");
}

}  // namespace

absl::StatusOr<LoadedDistribution> ParseDistribution(std::string_view text) {
  MOGAME_ASSIGN_OR_RETURN(json j, Parse(text));
  MOGAME_RETURN_IF_ERROR(CheckSchema(j, kDistributionSchema));
  MOGAME_ASSIGN_OR_RETURN(int n, IntField(j, "num_points"));
  MOGAME_ASSIGN_OR_RETURN(int k, IntField(j, "num_classes"));
  MOGAME_ASSIGN_OR_RETURN(int g, IntField(j, "num_groups"));
  if (n < 1) return absl::InvalidArgumentError("field 'num_points' must be >= 1");
  if (!j.contains("px")) return absl::InvalidArgumentError("missing field 'px'");
  MOGAME_ASSIGN_OR_RETURN(std::vector<double> px, Vector(j["px"], "field 'px'"));
  if (static_cast<int>(px.size()) != n) {
    return absl::InvalidArgumentError("field 'px' must have num_points entries");
  }
  auto law = j.find("label_law");
  if (law == j.end() || !law->is_array() ||
      static_cast<int>(law->size()) != n) {
    return absl::InvalidArgumentError(
        "field 'label_law' must have num_points entries");
  }

  if (j.contains("groups")) {
    const json& groups_json = j["groups"];
    if (!groups_json.is_array() || static_cast<int>(groups_json.size()) != g) {
      return absl::InvalidArgumentError(
          "field 'groups' must have num_groups entries");
    }
    std::vector<std::vector<int>> members;
    for (const auto& group : groups_json) {
      if (!group.is_array()) {
        return absl::InvalidArgumentError(
            "field 'groups' entries must list point indices");
      }
      std::vector<int> m;
      for (const auto& v : group) {
        if (!v.is_number_integer()) {
          return absl::InvalidArgumentError(
              "field 'groups' entries must list point indices");
        }
        m.push_back(v.get<int>());
      }
      members.push_back(std::move(m));
    }
    MOGAME_ASSIGN_OR_RETURN(GroupFamily family,
                            InField(GroupFamily::Create(n, std::move(members)),
                                    "groups"));
    std::vector<std::vector<double>> labels;
    for (int x = 0; x < n; ++x) {
      MOGAME_ASSIGN_OR_RETURN(
          auto v, Vector((*law)[x], absl::StrFormat("label_law[%d]", x)));
      if (static_cast<int>(v.size()) != k) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "label_law[%d] must have num_classes entries", x));
      }
      labels.push_back(std::move(v));
    }
    MOGAME_ASSIGN_OR_RETURN(
        TabularDistribution dist,
        InField(TabularDistribution::FromGroupFamily(family, std::move(px),
                                                     std::move(labels)),
                "label_law"));
    return LoadedDistribution{std::move(dist), std::move(family)};
  }

  std::vector<std::vector<MembershipBranch>> branches(n);
  for (int x = 0; x < n; ++x) {
    const json& entry = (*law)[x];
    if (!entry.is_array()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "label_law[%d] must be a list of branches when 'groups' is absent",
          x));
    }
    for (size_t b = 0; b < entry.size(); ++b) {
      const json& branch = entry[b];
      const std::string where = absl::StrFormat("label_law[%d][%d]", x, b);
      if (!branch.is_object() || !branch.contains("w") ||
          !branch.contains("p") || !branch.contains("y") ||
          !branch["p"].is_number()) {
        return absl::InvalidArgumentError(
            where + " must be an object with 'w', 'p' and 'y'");
      }
      MembershipBranch mb;
      MOGAME_ASSIGN_OR_RETURN(mb.w, MaskOf(branch["w"], g, where + ".w"));
      mb.probability = branch["p"].get<double>();
      MOGAME_ASSIGN_OR_RETURN(mb.label_law, Vector(branch["y"], where + ".y"));
      branches[x].push_back(std::move(mb));
    }
  }
  MOGAME_ASSIGN_OR_RETURN(
      TabularDistribution dist,
      InField(TabularDistribution::Create(k, g, std::move(px),
                                          std::move(branches)),
              "label_law"));
  return LoadedDistribution{std::move(dist), std::nullopt};
}

std::string SerializeDistribution(const TabularDistribution& dist) {
  json j;
  j["schema"] = kDistributionSchema;
  j["num_points"] = dist.domain_size();
  j["num_classes"] = dist.num_classes();
  j["num_groups"] = dist.num_groups();
  j["px"] = dist.px();
  json law = json::array();
  for (int x = 0; x < dist.domain_size(); ++x) {
    json entry = json::array();
    for (const auto& b : dist.branches(DomainPoint{x})) {
      std::vector<int> w;
      for (int s = 0; s < dist.num_groups(); ++s) {
        if (InGroup(b.w, s)) w.push_back(s);
      }
      entry.push_back({{"w", w}, {"p", b.probability}, {"y", b.label_law}});
    }
    law.push_back(std::move(entry));
  }
  j["label_law"] = std::move(law);
  return j.dump(2);
}

absl::StatusOr<DeterministicPredictor> ParsePredictor(std::string_view text) {
  MOGAME_ASSIGN_OR_RETURN(json j, Parse(text));
  return PredictorFromJson(j);
}

std::string SerializePredictor(const DeterministicPredictor& h) {
  return PredictorJson(h).dump(2);
}

absl::StatusOr<EnsemblePredictor> ParseEnsemble(std::string_view text) {
  MOGAME_ASSIGN_OR_RETURN(json j, Parse(text));
  MOGAME_RETURN_IF_ERROR(CheckSchema(j, kEnsembleSchema));
  auto it = j.find("members");
  if (it == j.end() || !it->is_array() || it->empty()) {
    return absl::InvalidArgumentError("field 'members' must be a nonempty array");
  }
  std::vector<DeterministicPredictor> members;
  for (const auto& m : *it) {
    MOGAME_ASSIGN_OR_RETURN(DeterministicPredictor h, PredictorFromJson(m));
    members.push_back(std::move(h));
  }
  return InField(EnsemblePredictor::Create(std::move(members)), "members");
}

std::string SerializeEnsemble(const EnsemblePredictor& ensemble) {
  json j;
  j["schema"] = kEnsembleSchema;
  json members = json::array();
  for (const auto& h : ensemble.members()) members.push_back(PredictorJson(h));
  j["members"] = std::move(members);
  return j.dump();
}

absl::StatusOr<std::string> ObjectiveManifest(const ObjectiveSet& set,
                                              uint64_t max_entries) {
  if (set.size() > max_entries) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "manifest of %d objectives exceeds the cap of %d", set.size(),
        max_entries));
  }
  json j;
  j["schema"] = kManifestSchema;
  j["size"] = set.size();
  json objectives = json::array();
  for (ObjectiveIndex i = 0; i < set.size(); ++i) {
    const LinearObjective o = set.Describe(i);
    json entry = {{"index", i},
                  {"kind", KindName(o.kind)},
                  {"component", o.component},
                  {"group", o.group},
                  {"bins", o.bins},
                  {"coord", o.coord},
                  {"sign", o.sign},
                  {"degree", o.moment_degree}};
    if (o.kind == ObjectiveKind::kCompetitive) {
      entry["base_kind"] = KindName(o.base_kind);
      entry["baseline"] = o.baseline;
    }
    objectives.push_back(std::move(entry));
  }
  j["objectives"] = std::move(objectives);
  return j.dump(2);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot open %s", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrFormat("cannot write %s", path));
  }
  out << contents;
  if (!out) return absl::DataLossError(absl::StrFormat("short write to %s", path));
  return absl::OkStatus();
}

}  // namespace mogame
