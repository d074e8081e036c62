// Copyright 2026 The oppshape Authors.
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

#include "oppshape/tournament.h"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "oppshape/parallel.h"

namespace oppshape {

Roster DefaultRoster() {
  auto entry = [](std::string name, LearnerKind kind, double eta) {
    LearnerSpec spec;
    spec.kind = kind;
    spec.lr = 1.0;
    spec.opp_lr = eta;
    return RosterEntry{std::move(name), spec};
  };
  return {entry("naive", LearnerKind::kNaive, 1.0),
          entry("lola-1", LearnerKind::kLolaExact, 1.0),
          entry("lola-30", LearnerKind::kLolaExact, 30.0),
          entry("sos-1", LearnerKind::kSos, 1.0),
          entry("sos-30", LearnerKind::kSos, 30.0)};
}

void ValidateRoster(const Roster& roster) {
  if (roster.size() < 2) {
    throw std::invalid_argument("roster needs at least two entries");
  }
  std::set<std::string> names;
  for (const RosterEntry& e : roster) {
    if (e.name.empty()) throw std::invalid_argument("roster name is empty");
    if (!names.insert(e.name).second) {
      throw std::invalid_argument("duplicate roster name: " + e.name);
    }
    ValidateSpec(e.spec);
  }
}

CrossPlayMatrix CrossPlay(const TournamentConfig& cfg) {
  ValidateRoster(cfg.roster);
  const int n = static_cast<int>(cfg.roster.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<ExperimentConfig> configs;
  for (size_t p = 0; p < pairs.size(); ++p) {
    ExperimentConfig c;
    c.game = cfg.game;
    c.spec_a = cfg.roster[pairs[p].first].spec;
    c.spec_b = cfg.roster[pairs[p].second].spec;
    c.steps = cfg.steps;
    c.runs = cfg.runs;
    c.seed = DeriveSeed(cfg.seed, p);
    ValidateConfig(c);
    configs.push_back(c);
  }

  const int total = static_cast<int>(pairs.size()) * cfg.runs;
  std::vector<RunSummary> runs(total);
  ParallelFor(total, [&](int k) {
    runs[k] = Simulate(configs[k / cfg.runs], k % cfg.runs);
  });

  CrossPlayMatrix matrix;
  for (const RosterEntry& e : cfg.roster) matrix.names.push_back(e.name);
  matrix.cells.assign(n, std::vector<CrossPlayCell>(n));
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    std::vector<double> pay_a, pay_b;
    int diverged = 0;
    for (int r = 0; r < cfg.runs; ++r) {
      const RunSummary& run = runs[p * cfg.runs + r];
      matrix.sos.Merge(run.sos);
      if (run.diverged) {
        ++diverged;
        continue;
      }
      pay_a.push_back(run.final.payoff.a);
      pay_b.push_back(run.final.payoff.b);
    }
    matrix.cells[i][j].payoff = Summarize(pay_a);
    matrix.cells[i][j].diverged = diverged;
    if (i != j) {
      matrix.cells[j][i].payoff = Summarize(pay_b);
      matrix.cells[j][i].diverged = diverged;
    }
  }
  MarkBestResponses(matrix);
  return matrix;
}

void MarkBestResponses(CrossPlayMatrix& matrix) {
  const size_t rows = matrix.cells.size();
  if (rows == 0) return;
  const size_t cols = matrix.cells.front().size();
  for (size_t j = 0; j < cols; ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < rows; ++k) {
      const MeanSd& m = matrix.cells[k][j].payoff;
      best = std::max(best, m.mean - m.se);
    }
    for (size_t i = 0; i < rows; ++i) {
      const MeanSd& m = matrix.cells[i][j].payoff;
      matrix.cells[i][j].best_response = m.mean + m.se >= best;
    }
  }
}

}  // namespace oppshape
