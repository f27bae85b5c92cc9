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

#include "mogame/audit.h"

#include <cmath>
#include <map>

#include "json.hpp"

namespace mogame {
namespace {

// Members sharing a bin vector at one point, pre-summed and scaled by 1/M.
struct BinGroup {
  std::vector<int> bins;
  double weight = 0.0;
  std::vector<double> sum;
  // Binary moment audits: Σ_m target(y, mu_m, a) / M at [a * 2 + y].
  std::vector<double> target_sum;
};

std::vector<std::vector<BinGroup>> GroupMembers(Members h, const LevelGrid& grid,
                                                int moments) {
  MOGAME_CHECK(!h.empty(), "no predictor to audit");
  const int n = h.front().domain_size();
  const double inv = 1.0 / static_cast<double>(h.size());
  std::vector<std::vector<BinGroup>> out(n);
  for (int xi = 0; xi < n; ++xi) {
    const DomainPoint x{xi};
    std::map<std::vector<int>, BinGroup> by_bin;
    for (const auto& member : h) {
      MOGAME_CHECK(member.domain_size() == n, "members differ in domain");
      const Prediction& p = member.at(x);
      auto bins = BinOf(p, grid);
      BinGroup& g = by_bin[bins];
      if (g.sum.empty()) {
        g.bins = bins;
        g.sum.assign(p.values().size(), 0.0);
        if (moments > 0) g.target_sum.assign(2 * (moments + 1), 0.0);
      }
      g.weight += inv;
      for (size_t i = 0; i < g.sum.size(); ++i) g.sum[i] += inv * p.values()[i];
      for (int a = 1; a <= moments; ++a) {
        for (int y = 0; y < 2; ++y) {
          g.target_sum[a * 2 + y] += inv * MomentTarget(y, p.at(0, 0), a);
        }
      }
    }
    for (auto& [bins, g] : by_bin) out[xi].push_back(std::move(g));
  }
  return out;
}

using Cells = std::map<std::vector<int>, double>;

// Largest |cell|; the map order makes the lexicographically first cell win
// ties.
std::pair<const std::vector<int>*, double> MaxCell(const Cells& cells) {
  const std::vector<int>* best = nullptr;
  double value = 0.0;
  for (const auto& [key, v] : cells) {
    if (best == nullptr || std::abs(v) > std::abs(value)) {
      best = &key;
      value = v;
    }
  }
  return {best, value};
}

template <typename Gate>
AuditReport Calibration(Members h, const TabularDistribution& dist,
                        const LevelGrid& grid, Gate&& gate) {
  const auto groups = GroupMembers(h, grid, 0);
  const int k = dist.num_classes();
  Cells cells;
  for (const auto& atom : dist.atoms()) {
    const Sample& z = atom.sample;
    const GroupMask mask = gate(z);
    if (mask == 0) continue;
    for (const auto& g : groups[z.x.index]) {
      for (GroupMask bits = mask; bits != 0; bits &= bits - 1) {
        const int s = __builtin_ctzll(bits);
        for (int j = 0; j < k; ++j) {
          std::vector<int> key = {s};
          key.insert(key.end(), g.bins.begin(), g.bins.begin() + k);
          key.push_back(j);
          cells[key] += atom.mass * (g.sum[j] - (z.y == j ? g.weight : 0.0));
        }
      }
    }
  }
  AuditReport report;
  auto [key, value] = MaxCell(cells);
  if (key == nullptr) return report;
  report.value = std::abs(value);
  report.witness.group = key->front();
  report.witness.bins.assign(key->begin() + 1, key->end() - 1);
  report.witness.coord = key->back();
  report.witness.sign = value >= 0.0 ? 1 : -1;
  return report;
}

template <typename Gate>
MomentAudit Moment(Members h, const TabularDistribution& dist,
                   const LevelGrid& grid, std::vector<int> degrees,
                   Gate&& gate) {
  const int moments = h.front().rows() - 1;
  MOGAME_CHECK(moments >= 1 && h.front().classes() == 2,
               "moment audits need binary predictions with moment rows");
  if (degrees.empty()) {
    for (int a = 2; a <= moments; a += 2) degrees.push_back(a);
  }
  const auto groups = GroupMembers(h, grid, moments);
  constexpr int k = 2;
  // Key: {S, a, bin of h_mu, bin of h_m,a, coord}.
  Cells mean_cells, moment_cells;
  for (const auto& atom : dist.atoms()) {
    const Sample& z = atom.sample;
    const GroupMask mask = gate(z);
    for (const auto& g : groups[z.x.index]) {
      for (GroupMask bits = mask; bits != 0; bits &= bits - 1) {
        const int s = __builtin_ctzll(bits);
        for (int a : degrees) {
          const double t = g.target_sum[a * 2 + z.y];
          for (int i = 0; i < k; ++i) {
            const std::vector<int> key = {s, a, g.bins[0], g.bins[a * k], i};
            mean_cells[key] +=
                atom.mass * (g.sum[i] - (z.y == i ? g.weight : 0.0));
            const double target = i == 0 ? t : g.weight - t;
            moment_cells[key] += atom.mass * (g.sum[a * k + i] - target);
          }
        }
      }
    }
  }
  auto fill = [](const Cells& cells) {
    AuditReport report;
    auto [key, value] = MaxCell(cells);
    if (key == nullptr) return report;
    const auto& kv = *key;
    report.value = std::abs(value);
    report.witness.group = kv[0];
    report.witness.degree = kv[1];
    report.witness.bins = {kv[2], kv[3]};
    report.witness.coord = kv[4];
    report.witness.sign = value >= 0.0 ? 1 : -1;
    return report;
  };
  return {fill(mean_cells), fill(moment_cells)};
}

}  // namespace

AuditReport AuditMulticalibration(Members h, const TabularDistribution& dist,
                                  const GroupFamily& groups,
                                  const LevelGrid& grid) {
  return Calibration(h, dist, grid,
                     [&](const Sample& z) { return groups.MaskOf(z.x); });
}

AuditReport AuditAgnostic(Members h, const TabularDistribution& dist,
                          const LevelGrid& grid) {
  return Calibration(h, dist, grid, [](const Sample& z) { return z.w; });
}

absl::StatusOr<AuditReport> AuditConditional(Members h,
                                             const TabularDistribution& dist,
                                             const LevelGrid& grid) {
  AuditReport report;
  for (int j = 0; j < dist.num_groups(); ++j) {
    MOGAME_ASSIGN_OR_RETURN(TabularDistribution cond, dist.ConditionOnGroup(j));
    AuditReport r =
        Calibration(h, cond, grid, [](const Sample&) { return GroupMask{1}; });
    report.per_distribution.push_back(r.value);
    if (j == 0 || r.value > report.value) {
      report.value = r.value;
      report.witness = r.witness;
      report.witness.group = j;
      report.witness.distribution = j;
    }
  }
  return report;
}

MomentAudit AuditMoment(Members h, const TabularDistribution& dist,
                        const GroupFamily& groups, const LevelGrid& grid,
                        std::vector<int> degrees) {
  return Moment(h, dist, grid, std::move(degrees),
                [&](const Sample& z) { return groups.MaskOf(z.x); });
}

AuditReport CovarianceSlack(const DeterministicPredictor& h,
                            const TabularDistribution& dist,
                            const LevelGrid& grid) {
  const int k = dist.num_classes();
  Cells cells;
  for (int xi = 0; xi < dist.domain_size(); ++xi) {
    const DomainPoint x{xi};
    if (dist.px(x) <= 0.0) continue;
    const auto bins = BinOf(h.at(x), grid);
    for (int s = 0; s < dist.num_groups(); ++s) {
      const double member = dist.MembershipProbability(x, s);
      for (int i = 0; i < k; ++i) {
        double joint = 0.0;
        for (const auto& b : dist.branches(x)) {
          if (InGroup(b.w, s)) joint += b.probability * b.label_law[i];
        }
        std::vector<int> key = {s};
        key.insert(key.end(), bins.begin(), bins.begin() + k);
        key.push_back(i);
        cells[key] += dist.px(x) * (joint - member * dist.LabelMean(x, i));
      }
    }
  }
  AuditReport report;
  auto [key, value] = MaxCell(cells);
  if (key == nullptr) return report;
  report.value = std::abs(value);
  report.witness.group = key->front();
  report.witness.bins.assign(key->begin() + 1, key->end() - 1);
  report.witness.coord = key->back();
  report.witness.sign = value >= 0.0 ? 1 : -1;
  return report;
}

absl::StatusOr<AuditReport> AuditProblem(const MultiObjectiveProblem& problem,
                                         Members h) {
  if (h.empty()) return absl::InvalidArgumentError("no predictor to audit");
  for (const auto& member : h) {
    MOGAME_RETURN_IF_ERROR(problem.CheckPredictor(member));
  }
  const auto& base = problem.base_distribution();
  const auto by_bits = [](const Sample& z) { return z.w; };
  switch (problem.kind()) {
    case ProblemKind::kMulticalibration:
      return Calibration(h, base, problem.grid(), by_bits);
    case ProblemKind::kAgnostic: {
      AuditReport report = AuditAgnostic(h, base, problem.grid());
      if (h.size() == 1) {
        report.slack = CovarianceSlack(h.front(), base, problem.grid()).value;
      }
      return report;
    }
    case ProblemKind::kConditional:
      return AuditConditional(h, base, problem.grid());
    case ProblemKind::kMoment: {
      // Recover the set's degrees by probing its index map.
      const ObjectiveSet& set = problem.objectives();
      std::vector<int> degrees;
      for (int a = 1; a < problem.signature().rows; ++a) {
        LinearObjective probe;
        probe.kind = ObjectiveKind::kMoment;
        probe.base_kind = ObjectiveKind::kMoment;
        probe.component = 1;
        probe.bins = {0, 0};
        probe.moment_degree = a;
        if (set.IndexOf(probe).has_value()) degrees.push_back(a);
      }
      MomentAudit m =
          Moment(h, base, problem.grid(), std::move(degrees), by_bits);
      return m.moment.value > m.mean.value ? m.moment : m.mean;
    }
    case ProblemKind::kCompetitive: {
      MOGAME_ASSIGN_OR_RETURN(
          EnsemblePredictor ensemble,
          EnsemblePredictor::Create({h.begin(), h.end()}));
      const ObjectiveValue top = MaxExactLoss(problem, ensemble);
      const LinearObjective o = problem.objectives().Describe(top.index);
      AuditReport report;
      report.value = top.value;
      report.witness.group = o.group;
      report.witness.bins = o.bins;
      report.witness.coord = o.coord;
      report.witness.sign = o.sign;
      report.witness.degree = o.moment_degree;
      return report;
    }
  }
  return absl::InternalError("unknown problem kind");
}

std::string AuditReportToJson(const AuditReport& report) {
  nlohmann::json j;
  j["value"] = report.value;
  j["slack"] = report.slack;
  j["witness"] = {{"distribution", report.witness.distribution},
                  {"group", report.witness.group},
                  {"bins", report.witness.bins},
                  {"coord", report.witness.coord},
                  {"sign", report.witness.sign},
                  {"degree", report.witness.degree}};
  if (!report.per_distribution.empty()) {
    j["per_distribution"] = report.per_distribution;
  }
  return j.dump();
}

}  // namespace mogame
