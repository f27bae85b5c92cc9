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

#include "mogame/transcript.h"

#include "json.hpp"

namespace mogame {

const char* DynamicsName(DynamicsKind kind) {
  return kind == DynamicsKind::kNrnr ? "nrnr" : "nrbr";
}

std::string Transcript::ToJsonLines(const std::string& summary_json,
                                    bool include_mixtures) const {
  using nlohmann::json;
  std::string out;
  for (size_t t = 0; t < rounds.size(); ++t) {
    const RoundRecord& r = rounds[t];
    json line;
    line["t"] = t;
    json predictions = json::array();
    for (const auto& p : r.prediction.table()) {
      predictions.push_back(std::vector<double>(p.values().begin(),
                                                p.values().end()));
    }
    line["prediction"] = std::move(predictions);
    json choices = json::array();
    for (const auto& c : r.choices) {
      json choice;
      if (c.objective.has_value()) {
        choice["objective"] = *c.objective;
      } else if (c.below_threshold) {
        choice["below_threshold"] = true;
      } else {
        choice["top"] = c.top;
        choice["top_mass"] = c.top_mass;
        if (include_mixtures) choice["mixture"] = c.mixture;
      }
      choices.push_back(std::move(choice));
    }
    line["choices"] = std::move(choices);
    json samples = json::array();
    for (const auto& z : r.samples) {
      samples.push_back({{"x", z.x.index}, {"w", z.w}, {"y", z.y}});
    }
    line["samples"] = std::move(samples);
    line["realized_losses"] = r.realized_losses;
    out += line.dump();
    out += '\n';
  }
  json summary;
  json body = json::parse(summary_json, nullptr, false);
  summary["summary"] = body.is_object() ? body : json::object();
  summary["summary"]["dynamics"] = DynamicsName(dynamics);
  summary["summary"]["problem"] = ProblemKindName(problem_kind);
  summary["summary"]["seed"] = seed;
  summary["summary"]["rounds"] = rounds.size();
  out += summary.dump();
  out += '\n';
  return out;
}

}  // namespace mogame
