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

#include "oppshape/experiments.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "oppshape/dual.h"
#include "oppshape/parallel.h"

namespace oppshape {
namespace {

constexpr double kDefaultSigma = 0.1;
constexpr double kTandemSigma = 1.0;
constexpr double kFairBotLogit = 3.0;

bool InBounds(const Params& theta) {
  return std::all_of(theta.begin(), theta.end(), [](double x) {
    return std::isfinite(x) && std::abs(x) <= kDivergenceBound;
  });
}

// Means of columns [offset, offset + width) of `rows`.
std::vector<double> ColumnMeans(
    const std::vector<const std::vector<double>*>& rows, size_t offset,
    size_t width) {
  std::vector<double> means(width, 0.0);
  for (const auto* row : rows) {
    for (size_t k = 0; k < width; ++k) means[k] += (*row)[offset + k];
  }
  for (double& m : means) m /= static_cast<double>(rows.size());
  return means;
}

}  // namespace

std::string InitSchemeName(InitScheme scheme) {
  return scheme == InitScheme::kGaussian ? "gauss" : "egfb";
}

InitScheme ParseInitScheme(const std::string& name) {
  if (name == "gauss") return InitScheme::kGaussian;
  if (name == "egfb") return InitScheme::kNearFairBot;
  throw std::invalid_argument("unknown init scheme: " + name);
}

double ResolvedInitSigma(const ExperimentConfig& cfg) {
  if (cfg.init_sigma >= 0.0) return cfg.init_sigma;
  return std::holds_alternative<TandemGame>(cfg.game) ? kTandemSigma
                                                      : kDefaultSigma;
}

void ValidateConfig(const ExperimentConfig& cfg) {
  if (cfg.steps < 1) throw std::invalid_argument("steps must be positive");
  if (cfg.runs < 1) throw std::invalid_argument("runs must be positive");
  ValidateSpec(cfg.spec_a);
  ValidateSpec(cfg.spec_b);
  if (!std::isfinite(cfg.init_sigma)) {
    throw std::invalid_argument("init sigma must be finite");
  }
  if (cfg.init == InitScheme::kNearFairBot && !IsMatrixGame(cfg.game)) {
    throw std::invalid_argument("egfb initialization requires a 2x2 game");
  }
}

std::pair<Params, Params> InitialParams(const ExperimentConfig& cfg,
                                        NormalSampler& rng) {
  const int n = GameArity(cfg.game);
  const double sigma = ResolvedInitSigma(cfg);
  Params center(n, 0.0);
  if (cfg.init == InitScheme::kNearFairBot) {
    center = {kFairBotLogit, kFairBotLogit, kFairBotLogit, -kFairBotLogit};
  }
  std::pair<Params, Params> theta{Params(n), Params(n)};
  for (int i = 0; i < n; ++i) theta.first[i] = rng.Normal(center[i], sigma);
  for (int i = 0; i < n; ++i) theta.second[i] = rng.Normal(center[i], sigma);
  return theta;
}

State MakeState(const Game& game, Params theta_a, Params theta_b) {
  State s;
  s.payoff = ExpectedPayoffs(game, theta_a, theta_b);
  if (IsMatrixGame(game)) {
    const auto pa = PolicyProbabilities(theta_a);
    const auto pb = PolicyProbabilities(theta_b);
    const auto o = OutcomeProbabilities(theta_a, theta_b);
    s.probs_a.assign(pa.begin(), pa.end());
    s.probs_b.assign(pb.begin(), pb.end());
    s.outcomes.assign(o.begin(), o.end());
  } else if (std::holds_alternative<UltimatumGame>(game)) {
    s.probs_a = {Sigmoid(theta_a[0])};
    s.probs_b = {Sigmoid(theta_b[0])};
  }
  s.theta_a = std::move(theta_a);
  s.theta_b = std::move(theta_b);
  return s;
}

void SosStats::Add(const GradientReport& report) {
  ++evaluations;
  min_alignment = std::min(min_alignment, report.la_alignment);
  min_p = std::min(min_p, report.sos_p);
  max_p = std::max(max_p, report.sos_p);
}

void SosStats::Merge(const SosStats& other) {
  evaluations += other.evaluations;
  min_alignment = std::min(min_alignment, other.min_alignment);
  min_p = std::min(min_p, other.min_p);
  max_p = std::max(max_p, other.max_p);
}

bool SosStats::Holds(double tol) const {
  if (evaluations == 0) return true;
  return min_alignment >= -tol && min_p >= 0.0 && max_p <= 1.0;
}

RunSummary Simulate(const ExperimentConfig& cfg, int run,
                    const StepObserver& observer) {
  ValidateConfig(cfg);
  RunSummary summary;
  summary.seed = DeriveSeed(cfg.seed, static_cast<std::uint64_t>(run));
  NormalSampler rng(summary.seed);
  auto [theta_a, theta_b] = InitialParams(cfg, rng);
  State state = MakeState(cfg.game, std::move(theta_a), std::move(theta_b));
  summary.initial = state;
  const bool sos_a = cfg.spec_a.kind == LearnerKind::kSos;
  const bool sos_b = cfg.spec_b.kind == LearnerKind::kSos;
  for (int t = 0; t < cfg.steps; ++t) {
    StepResult r = UpdateStep(cfg.spec_a, cfg.spec_b, cfg.game, state.theta_a,
                              state.theta_b);
    if (sos_a) summary.sos.Add(r.report_a);
    if (sos_b) summary.sos.Add(r.report_b);
    if (observer) observer(t, state, &r);
    if (!InBounds(r.next_a) || !InBounds(r.next_b)) {
      summary.diverged = true;
      summary.final = std::move(state);
      return summary;
    }
    state = MakeState(cfg.game, std::move(r.next_a), std::move(r.next_b));
    summary.completed_steps = t + 1;
  }
  if (observer) observer(cfg.steps, state, nullptr);
  summary.final = std::move(state);
  return summary;
}

RunRecord RunTraining(const ExperimentConfig& cfg, int run) {
  RunRecord record;
  record.states.reserve(cfg.steps + 1);
  record.summary =
      Simulate(cfg, run, [&](int, const State& state, const StepResult* next) {
        record.states.push_back(state);
        if (next) {
          record.sos_p_a.push_back(next->report_a.sos_p);
          record.sos_p_b.push_back(next->report_b.sos_p);
        }
      });
  // A divergent run reports the offending step but never reaches its state.
  if (record.summary.diverged) {
    record.sos_p_a.pop_back();
    record.sos_p_b.pop_back();
  }
  return record;
}

std::vector<RunSummary> RunAll(const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  std::vector<RunSummary> runs(cfg.runs);
  ParallelFor(cfg.runs, [&](int r) { runs[r] = Simulate(cfg, r); });
  return runs;
}

MeanSd Summarize(std::span<const double> values) {
  MeanSd s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n < 2) return s;
  double squares = 0.0;
  for (double v : values) squares += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(squares / (s.n - 1));
  s.se = 2.0 * s.sd / std::sqrt(static_cast<double>(s.n));
  return s;
}

OutcomeSummary SummarizeOutcomes(const std::vector<RunSummary>& runs) {
  OutcomeSummary out;
  out.runs = static_cast<int>(runs.size());
  std::vector<double> pay_a, pay_b;
  std::vector<std::vector<double>> outcomes(4);
  for (const RunSummary& r : runs) {
    out.sos.Merge(r.sos);
    if (r.diverged) {
      ++out.diverged;
      continue;
    }
    pay_a.push_back(r.final.payoff.a);
    pay_b.push_back(r.final.payoff.b);
    for (size_t k = 0; k < r.final.outcomes.size(); ++k) {
      outcomes[k].push_back(r.final.outcomes[k]);
    }
  }
  out.payoff_a = Summarize(pay_a);
  out.payoff_b = Summarize(pay_b);
  if (!runs.empty() && !runs.front().initial.outcomes.empty()) {
    for (const auto& o : outcomes) out.outcomes.push_back(Summarize(o));
  }
  return out;
}

std::vector<SweepPoint> EtaSweep(const ExperimentConfig& base,
                                 std::span<const double> etas) {
  for (double eta : etas) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      throw std::invalid_argument("swept eta values must be positive");
    }
  }
  std::vector<SweepPoint> points;
  for (double eta : etas) {
    ExperimentConfig cfg = base;
    cfg.spec_a.opp_lr = eta;
    cfg.spec_b.opp_lr = eta;
    points.push_back({eta, SummarizeOutcomes(RunAll(cfg))});
  }
  return points;
}

TrajectoryStats FluctuationStats(const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  // Per-run rows of (payoff_a, payoff_b, theta_a, theta_b, probs_a, probs_b,
  // outcomes) for every step.
  std::vector<std::vector<std::vector<double>>> rows(cfg.runs);
  std::vector<RunSummary> summaries(cfg.runs);
  ParallelFor(cfg.runs, [&](int r) {
    rows[r].reserve(cfg.steps + 1);
    summaries[r] =
        Simulate(cfg, r, [&](int, const State& s, const StepResult*) {
          std::vector<double> row = {s.payoff.a, s.payoff.b};
          for (const auto* part :
               {&s.theta_a, &s.theta_b, &s.probs_a, &s.probs_b, &s.outcomes}) {
            row.insert(row.end(), part->begin(), part->end());
          }
          rows[r].push_back(std::move(row));
        });
  });

  TrajectoryStats stats;
  stats.runs = cfg.runs;
  std::vector<bool> keep(cfg.runs);
  for (int r = 0; r < cfg.runs; ++r) {
    stats.sos.Merge(summaries[r].sos);
    keep[r] = !summaries[r].diverged;
    if (!keep[r]) ++stats.diverged;
  }
  stats.run_summaries = std::move(summaries);
  if (stats.diverged == cfg.runs) return stats;

  const State& shape = stats.run_summaries.front().initial;
  const size_t n_theta_a = shape.theta_a.size();
  const size_t n_theta_b = shape.theta_b.size();
  const size_t n_probs_a = shape.probs_a.size();
  const size_t n_probs_b = shape.probs_b.size();
  const size_t n_outcomes = shape.outcomes.size();
  stats.steps.resize(cfg.steps + 1);
  for (int t = 0; t <= cfg.steps; ++t) {
    std::vector<const std::vector<double>*> at_step;
    for (int r = 0; r < cfg.runs; ++r) {
      if (keep[r]) at_step.push_back(&rows[r][t]);
    }
    std::vector<double> pay_a, pay_b;
    for (const auto* row : at_step) {
      pay_a.push_back((*row)[0]);
      pay_b.push_back((*row)[1]);
    }
    StepStats& s = stats.steps[t];
    s.payoff_a = Summarize(pay_a);
    s.payoff_b = Summarize(pay_b);
    size_t offset = 2;
    for (auto [field, width] :
         {std::pair{&s.theta_a, n_theta_a}, std::pair{&s.theta_b, n_theta_b},
          std::pair{&s.probs_a, n_probs_a}, std::pair{&s.probs_b, n_probs_b},
          std::pair{&s.outcomes, n_outcomes}}) {
      *field = ColumnMeans(at_step, offset, width);
      offset += width;
    }
  }
  return stats;
}

FinalParams FinalParamsSummary(const ExperimentConfig& cfg) {
  if (!IsMatrixGame(cfg.game)) {
    throw std::invalid_argument("final-params requires a 2x2 game");
  }
  const std::vector<RunSummary> runs = RunAll(cfg);
  FinalParams out;
  out.runs = cfg.runs;
  std::vector<double> pay_hi, pay_lo;
  std::vector<std::vector<double>> probs_hi(4), probs_lo(4);
  for (const RunSummary& r : runs) {
    if (r.diverged) {
      ++out.diverged;
      continue;
    }
    const bool a_higher = r.final.payoff.a >= r.final.payoff.b;
    pay_hi.push_back(a_higher ? r.final.payoff.a : r.final.payoff.b);
    pay_lo.push_back(a_higher ? r.final.payoff.b : r.final.payoff.a);
    const auto& hi = a_higher ? r.final.probs_a : r.final.probs_b;
    const auto& lo = a_higher ? r.final.probs_b : r.final.probs_a;
    for (int k = 0; k < 4; ++k) {
      probs_hi[k].push_back(hi[k]);
      probs_lo[k].push_back(lo[k]);
    }
  }
  out.higher.payoff = Summarize(pay_hi);
  out.lower.payoff = Summarize(pay_lo);
  for (int k = 0; k < 4; ++k) {
    out.higher.probs.push_back(Summarize(probs_hi[k]));
    out.lower.probs.push_back(Summarize(probs_lo[k]));
  }
  return out;
}

std::vector<FieldPoint> GradientField(const LearnerSpec& spec, int resolution) {
  if (resolution < 2) {
    throw std::invalid_argument("gradient field resolution must be >= 2");
  }
  ValidateSpec(spec);
  const Game game = UltimatumGame{};
  std::vector<FieldPoint> field;
  field.reserve(resolution * resolution);
  const double step = (kFieldHigh - kFieldLow) / (resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      FieldPoint p;
      p.p_fair = kFieldLow + i * step;
      p.p_accept = kFieldLow + j * step;
      p.theta_a = Logit(p.p_fair);
      p.theta_b = Logit(p.p_accept);
      const StepResult r =
          UpdateStep(spec, spec, game, {p.theta_a}, {p.theta_b});
      p.grad_a = r.report_a.final[0];
      p.grad_b = r.report_b.final[0];
      field.push_back(p);
    }
  }
  return field;
}

std::vector<TandemResult> TandemExperiment(double eta, int steps, int runs,
                                           std::uint64_t seed) {
  const std::pair<LearnerKind, LearnerKind> pairings[] = {
      {LearnerKind::kLolaExact, LearnerKind::kLolaExact},
      {LearnerKind::kLolaExact, LearnerKind::kSos},
      {LearnerKind::kSos, LearnerKind::kSos}};
  std::vector<TandemResult> results;
  for (const auto& [kind_a, kind_b] : pairings) {
    ExperimentConfig cfg;
    cfg.game = TandemGame{};
    cfg.spec_a = {kind_a, eta, eta};
    cfg.spec_b = {kind_b, eta, eta};
    cfg.steps = steps;
    cfg.runs = runs;
    cfg.seed = seed;
    TandemResult result;
    result.kind_a = kind_a;
    result.kind_b = kind_b;
    result.trajectory = FluctuationStats(cfg);
    for (const RunSummary& r : result.trajectory.run_summaries) {
      if (!r.diverged) {
        result.final_sums.push_back(r.final.theta_a[0] + r.final.theta_b[0]);
      }
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace oppshape
