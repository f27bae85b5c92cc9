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

#include "mogame/lazy_learner.h"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace mogame {

PointLazyLearner::PointLazyLearner(int domain_size, int rows, int classes,
                                   int64_t horizon)
    : domain_size_(domain_size),
      rows_(rows),
      classes_(classes),
      horizon_(horizon) {
  MOGAME_CHECK(domain_size >= 1 && rows >= 1 && classes >= 2 && horizon >= 1,
               "invalid lazy learner signature");
}

std::vector<Hedge>& PointLazyLearner::StateAt(DomainPoint x) {
  auto it = states_.find(x.index);
  if (it == states_.end()) {
    std::vector<Hedge> rows;
    rows.reserve(rows_);
    for (int r = 0; r < rows_; ++r) {
      rows.push_back(Hedge::Create(classes_, horizon_).value());
    }
    it = states_.emplace(x.index, std::move(rows)).first;
  }
  return it->second;
}

Prediction PointLazyLearner::Predict(DomainPoint x) const {
  MOGAME_CHECK(x.index >= 0 && x.index < domain_size_, "point out of range");
  auto it = states_.find(x.index);
  if (it == states_.end()) return Prediction::Uniform(rows_, classes_);
  std::vector<double> values;
  values.reserve(rows_ * classes_);
  for (const auto& hedge : it->second) {
    auto p = hedge.Distribution();
    values.insert(values.end(), p.begin(), p.end());
  }
  return Prediction::FromTrusted(rows_, classes_, std::move(values));
}

DeterministicPredictor PointLazyLearner::PredictAll() const {
  std::vector<Prediction> table;
  table.reserve(domain_size_);
  for (int x = 0; x < domain_size_; ++x) table.push_back(Predict(DomainPoint{x}));
  return DeterministicPredictor::Create(std::move(table)).value();
}

void PointLazyLearner::Update(DomainPoint x, int row,
                              std::span<const double> loss) {
  MOGAME_CHECK(row >= 0 && row < rows_, "row out of range");
  StateAt(x)[row].Update(loss);
}

std::string PointLazyLearner::ToJson() const {
  nlohmann::json j;
  j["domain_size"] = domain_size_;
  j["rows"] = rows_;
  j["classes"] = classes_;
  j["horizon"] = horizon_;
  // Sorted for a stable byte representation.
  std::map<int, const std::vector<Hedge>*> ordered;
  for (const auto& [x, rows] : states_) ordered[x] = &rows;
  nlohmann::json points = nlohmann::json::array();
  for (const auto& [x, rows] : ordered) {
    nlohmann::json entry;
    entry["x"] = x;
    entry["rows"] = nlohmann::json::array();
    for (const auto& hedge : *rows) {
      entry["rows"].push_back(nlohmann::json::parse(hedge.ToJson()));
    }
    points.push_back(std::move(entry));
  }
  j["points"] = std::move(points);
  return j.dump();
}

absl::StatusOr<PointLazyLearner> PointLazyLearner::FromJson(
    const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("learner state is not a JSON object");
  }
  try {
    const int n = j.at("domain_size").get<int>();
    const int rows = j.at("rows").get<int>();
    const int classes = j.at("classes").get<int>();
    const int64_t horizon = j.at("horizon").get<int64_t>();
    if (n < 1 || rows < 1 || classes < 2 || horizon < 1) {
      return absl::InvalidArgumentError("learner state has a bad signature");
    }
    PointLazyLearner learner(n, rows, classes, horizon);
    for (const auto& entry : j.at("points")) {
      const int x = entry.at("x").get<int>();
      if (x < 0 || x >= n || entry.at("rows").size() != static_cast<size_t>(rows)) {
        return absl::InvalidArgumentError("learner state has a bad point entry");
      }
      std::vector<Hedge> states;
      for (const auto& row : entry.at("rows")) {
        MOGAME_ASSIGN_OR_RETURN(Hedge h, Hedge::FromJson(row.dump()));
        if (h.num_actions() != classes) {
          return absl::InvalidArgumentError("row state has the wrong width");
        }
        states.push_back(std::move(h));
      }
      learner.states_.emplace(x, std::move(states));
    }
    return learner;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
}

DeterministicPredictor JoinComponents(
    const std::vector<DeterministicPredictor>& components) {
  MOGAME_CHECK(!components.empty(), "no components to join");
  if (components.size() == 1) return components.front();
  const int n = components.front().domain_size();
  const int k = components.front().classes();
  int rows = 0;
  for (const auto& c : components) rows += c.rows();
  std::vector<Prediction> table;
  table.reserve(n);
  for (int x = 0; x < n; ++x) {
    std::vector<double> values;
    values.reserve(rows * k);
    for (const auto& c : components) {
      auto v = c.at(DomainPoint{x}).values();
      values.insert(values.end(), v.begin(), v.end());
    }
    table.push_back(Prediction::FromTrusted(rows, k, std::move(values)));
  }
  return DeterministicPredictor::Create(std::move(table)).value();
}

namespace {

// Accumulates row loss vectors at one point and flushes nonzero rows.
class PointLoss {
 public:
  PointLoss(int rows, int classes)
      : classes_(classes), loss_(rows * classes, 0.0), touched_(rows, false) {}

  void Add(int row, int coord, double value) {
    loss_[row * classes_ + coord] += value;
    touched_[row] = true;
  }

  void Flush(PointLazyLearner& learner, DomainPoint x) {
    for (size_t r = 0; r < touched_.size(); ++r) {
      if (!touched_[r]) continue;
      auto row = std::span<double>(loss_).subspan(r * classes_, classes_);
      for (double& v : row) v = std::clamp(v, -1.0, 1.0);
      learner.Update(x, static_cast<int>(r), row);
    }
  }

 private:
  int classes_;
  std::vector<double> loss_;
  std::vector<bool> touched_;
};

void CheckLearner(const PointLazyLearner& learner,
                  const MultiObjectiveProblem& problem, int component) {
  const auto& sig = problem.signature();
  MOGAME_CHECK(component >= 0 && component < sig.num_components() &&
                   learner.rows() == sig.component_rows[component] &&
                   learner.classes() == sig.classes &&
                   learner.domain_size() == problem.domain_size(),
               "learner does not match the problem signature");
}

}  // namespace

void FeedObjective(PointLazyLearner& learner,
                   const MultiObjectiveProblem& problem, int component,
                   ObjectiveIndex index, const DeterministicPredictor& h) {
  CheckLearner(learner, problem, component);
  const ObjectiveSet& set = problem.objectives();
  MOGAME_CHECK(set.ComponentOf(index) == component,
               "objective belongs to another component");
  const int d = set.DistributionOf(index);
  const int first_row = problem.signature().first_row(component);
  for (int xi = 0; xi < problem.domain_size(); ++xi) {
    const DomainPoint x{xi};
    const double weight = problem.LearnerWeight(d, x);
    if (weight <= 0.0) continue;
    PointLoss loss(learner.rows(), learner.classes());
    bool any = false;
    for (const auto& branch : problem.distribution(d).branches(x)) {
      if (branch.probability <= 0.0) continue;
      auto a = set.Activate(index, h.at(x), x, branch.w);
      if (!a.has_value()) continue;
      loss.Add(a->row - first_row, a->coord,
               weight * branch.probability * a->coefficient);
      any = true;
    }
    if (any) loss.Flush(learner, x);
  }
}

void FeedMixture(PointLazyLearner& learner,
                 const MultiObjectiveProblem& problem, int component,
                 std::span<const double> q, const DeterministicPredictor& h) {
  CheckLearner(learner, problem, component);
  const ObjectiveSet& set = problem.objectives();
  const ObjectiveIndex begin = set.component_begin(component);
  const ObjectiveIndex end = set.component_end(component);
  MOGAME_CHECK(q.size() == end - begin, "mixture length differs from range");
  const int first_row = problem.signature().first_row(component);
  for (int xi = 0; xi < problem.domain_size(); ++xi) {
    const DomainPoint x{xi};
    PointLoss loss(learner.rows(), learner.classes());
    bool any = false;
    for (int d = 0; d < problem.num_distributions(); ++d) {
      const double weight = problem.LearnerWeight(d, x);
      if (weight <= 0.0) continue;
      for (const auto& branch : problem.distribution(d).branches(x)) {
        if (branch.probability <= 0.0) continue;
        const double scale = weight * branch.probability;
        set.ForEachGate(h.at(x), x, branch.w, d,
                        [&](ObjectiveIndex index, const Activation& a) {
                          if (index < begin || index >= end) return;
                          const double mass = q[index - begin];
                          if (mass == 0.0) return;
                          loss.Add(a.row - first_row, a.coord,
                                   scale * mass * a.coefficient);
                          any = true;
                        });
      }
    }
    if (any) loss.Flush(learner, x);
  }
}

}  // namespace mogame
