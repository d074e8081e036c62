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

#ifndef OPPSHAPE_EXPERIMENTS_H_
#define OPPSHAPE_EXPERIMENTS_H_

// Seeded training runs and the aggregate statistics built from them.
//
// Run r of a configuration draws its initial parameters from a NormalSampler
// seeded with DeriveSeed(seed, r), so every run is reproducible on its own and
// results do not depend on how runs are spread over threads. Aggregates are
// accumulated in run order.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "oppshape/games.h"
#include "oppshape/learners.h"
#include "oppshape/random.h"
#include "oppshape/valuefn.h"

namespace oppshape {

// Runs whose parameters leave [-kDivergenceBound, kDivergenceBound] or become
// non-finite are stopped and counted as divergent.
inline constexpr double kDivergenceBound = 1e6;

enum class InitScheme { kGaussian, kNearFairBot };

std::string InitSchemeName(InitScheme scheme);
// Accepts gauss and egfb.
InitScheme ParseInitScheme(const std::string& name);

struct ExperimentConfig {
  Game game = PrisonersDilemma();
  LearnerSpec spec_a;
  LearnerSpec spec_b;
  int steps = 1000;
  int runs = 100;
  InitScheme init = InitScheme::kGaussian;
  // Standard deviation of the initial parameters, or of the noise around
  // (3, 3, 3, -3) for kNearFairBot. Negative selects the default: 1 for the
  // tandem game, 0.1 otherwise.
  double init_sigma = -1.0;
  std::uint64_t seed = 0;
};

double ResolvedInitSigma(const ExperimentConfig& cfg);

// Throws std::invalid_argument for non-positive steps or runs, invalid learner
// specs, a negative or non-finite sigma, or kNearFairBot outside 2x2 games.
void ValidateConfig(const ExperimentConfig& cfg);

// Initial (theta_a, theta_b) drawn from `rng`.
std::pair<Params, Params> InitialParams(const ExperimentConfig& cfg,
                                        NormalSampler& rng);

// Everything recorded about one parameter pair.
struct State {
  Params theta_a;
  Params theta_b;
  // Pr[S], Pr[C|not S], Pr[C|C], Pr[C|D] in 2x2 games, (p_fair) and
  // (p_accept) in the ultimatum game, empty in the tandem game.
  std::vector<double> probs_a;
  std::vector<double> probs_b;
  Payoffs<double> payoff{0.0, 0.0};
  // P_CC, P_CD, P_DC, P_DD in 2x2 games, empty otherwise.
  std::vector<double> outcomes;
};

State MakeState(const Game& game, Params theta_a, Params theta_b);

// Extremes of the SOS diagnostics over every evaluated SOS gradient.
struct SosStats {
  long evaluations = 0;
  double min_alignment = std::numeric_limits<double>::infinity();
  double min_p = std::numeric_limits<double>::infinity();
  double max_p = -std::numeric_limits<double>::infinity();

  void Add(const GradientReport& report);
  void Merge(const SosStats& other);
  // <final, look_ahead> >= -tol and p in [0, 1] at every evaluation.
  bool Holds(double tol = 1e-10) const;
};

struct RunSummary {
  std::uint64_t seed = 0;
  State initial;
  State final;  // last finite state for divergent runs
  int completed_steps = 0;
  bool diverged = false;
  SosStats sos;
};

// Called for every visited state with the step taken from it, or nullptr for
// the final state.
using StepObserver =
    std::function<void(int step, const State& state, const StepResult* next)>;

// Run `run` of `cfg`. Validates the configuration.
RunSummary Simulate(const ExperimentConfig& cfg, int run,
                    const StepObserver& observer = {});

struct RunRecord {
  RunSummary summary;
  std::vector<State> states;    // steps + 1 entries unless divergent
  std::vector<double> sos_p_a;  // one entry per step taken
  std::vector<double> sos_p_b;
};

RunRecord RunTraining(const ExperimentConfig& cfg, int run);

// All runs of `cfg`, in run order.
std::vector<RunSummary> RunAll(const ExperimentConfig& cfg);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for fewer than 2 values
  double se = 0.0;  // 2 sd / sqrt(n)
  int n = 0;
};

MeanSd Summarize(std::span<const double> values);

// Final-state statistics over the non-divergent runs.
struct OutcomeSummary {
  int runs = 0;
  int diverged = 0;
  std::vector<MeanSd> outcomes;  // CC, CD, DC, DD
  MeanSd payoff_a;
  MeanSd payoff_b;
  SosStats sos;
};

OutcomeSummary SummarizeOutcomes(const std::vector<RunSummary>& runs);

struct SweepPoint {
  double eta = 0.0;
  OutcomeSummary summary;
};

// Runs `base` once for each eta, with both learners imputing that eta.
// Throws std::invalid_argument for non-positive etas.
std::vector<SweepPoint> EtaSweep(const ExperimentConfig& base,
                                 std::span<const double> etas);

struct StepStats {
  MeanSd payoff_a;
  MeanSd payoff_b;
  std::vector<double> theta_a;  // means
  std::vector<double> theta_b;
  std::vector<double> probs_a;
  std::vector<double> probs_b;
  std::vector<double> outcomes;
};

// Per-step statistics over the non-divergent runs.
struct TrajectoryStats {
  int runs = 0;
  int diverged = 0;
  std::vector<StepStats> steps;  // steps + 1 entries
  SosStats sos;
  std::vector<RunSummary> run_summaries;  // every run, in run order
};

TrajectoryStats FluctuationStats(const ExperimentConfig& cfg);

struct RoleSummary {
  MeanSd payoff;
  std::vector<MeanSd> probs;  // Pr[S], Pr[C|not S], Pr[C|C], Pr[C|D]
};

// Final parameters split into the agent with the higher and the one with the
// lower final payoff. Exact ties put player A in the higher role.
struct FinalParams {
  int runs = 0;
  int diverged = 0;
  RoleSummary higher;
  RoleSummary lower;
};

// Requires a 2x2 game.
FinalParams FinalParamsSummary(const ExperimentConfig& cfg);

struct FieldPoint {
  double p_fair = 0.0;
  double p_accept = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double grad_a = 0.0;  // proposer, d/d theta_a
  double grad_b = 0.0;  // responder, d/d theta_b
};

inline constexpr double kFieldLow = 0.02;
inline constexpr double kFieldHigh = 0.98;

// Ultimatum-game gradients of two `spec` learners on a resolution x resolution
// grid over (p_fair, p_accept) in [kFieldLow, kFieldHigh]^2, row-major in
// p_fair. Throws std::invalid_argument for resolution < 2.
std::vector<FieldPoint> GradientField(const LearnerSpec& spec, int resolution);

struct TandemResult {
  LearnerKind kind_a = LearnerKind::kLolaExact;
  LearnerKind kind_b = LearnerKind::kLolaExact;
  TrajectoryStats trajectory;
  std::vector<double> final_sums;  // x + y of each non-divergent run
};

// LOLA/LOLA, LOLA/SOS and SOS/SOS in the tandem game with delta = eta for all
// learners and unit Gaussian initialization.
std::vector<TandemResult> TandemExperiment(double eta, int steps, int runs,
                                           std::uint64_t seed);

}  // namespace oppshape

#endif  // OPPSHAPE_EXPERIMENTS_H_
