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

#include <map>

#include "mogame/dynamics.h"

namespace mogame {

DeterministicPredictor MajorityRound(const EnsemblePredictor& ensemble,
                                     const LevelGrid& grid) {
  const auto& members = ensemble.members();
  MOGAME_CHECK(!members.empty(), "ensemble is empty");
  const int n = members.front().domain_size();
  const int rows = members.front().rows();
  const int k = members.front().classes();
  std::vector<Prediction> table;
  table.reserve(n);
  for (int xi = 0; xi < n; ++xi) {
    const DomainPoint x{xi};
    std::map<std::vector<int>, std::vector<int>> by_bin;
    for (int m = 0; m < static_cast<int>(members.size()); ++m) {
      by_bin[BinOf(members[m].at(x), grid)].push_back(m);
    }
    // std::map iterates in lexicographic order, so the first maximum wins.
    const std::vector<int>* modal = nullptr;
    for (const auto& [bins, who] : by_bin) {
      if (modal == nullptr || who.size() > modal->size()) modal = &who;
    }
    std::vector<double> values(static_cast<size_t>(rows) * k, 0.0);
    for (int m : *modal) {
      const auto v = members[m].at(x).values();
      for (size_t i = 0; i < values.size(); ++i) values[i] += v[i];
    }
    for (int r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (int j = 0; j < k; ++j) sum += values[r * k + j];
      for (int j = 0; j < k; ++j) values[r * k + j] /= sum;
    }
    table.push_back(Prediction::FromTrusted(rows, k, std::move(values)));
  }
  return DeterministicPredictor::Create(std::move(table)).value();
}

}  // namespace mogame
