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

#include "cli.h"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oppshape/experiments.h"
#include "oppshape/games.h"
#include "oppshape/learners.h"
#include "oppshape/tournament.h"

namespace oppshape::cli {
namespace {

using Json = nlohmann::ordered_json;

// Invalid arguments or configuration, reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<double> kDefaultEtas = {0.1, 0.3, 1, 3, 10, 30, 100};
const char* const kOutcomeKeys[] = {"CC", "CD", "DC", "DD"};

struct LearnerOptions {
  std::string kind = "lola";
  double eta = 1.0;
  double delta = 1.0;
  double sos_a = 0.5;
  double sos_b = 0.1;
};

struct Options {
  std::string command;
  std::string game;
  std::optional<std::array<OutcomePayoff, 4>> payoffs;  // custom games
  LearnerOptions learner_a;
  LearnerOptions learner_b;
  int steps = 1000;
  int runs = 100;
  std::uint64_t seed = 0;
  std::string init = "gauss";
  double init_sigma = -1.0;
  std::vector<double> etas = kDefaultEtas;
  int resolution = 25;
  std::optional<int> run;  // train: emit this single run
  std::vector<std::pair<std::string, LearnerOptions>> roster;
  std::string format = "csv";
  std::string out;
};

// Values given on the command line; unset ones keep the configured value.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> game;
  std::optional<std::string> learner_a;
  std::optional<std::string> learner_b;
  std::optional<double> eta_a;
  std::optional<double> eta_b;
  std::optional<double> delta_a;
  std::optional<double> delta_b;
  std::optional<int> steps;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> init;
  std::optional<double> init_sigma;
  std::optional<std::vector<double>> etas;
  std::optional<int> resolution;
  std::optional<int> run;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

Options Defaults(const std::string& command) {
  Options o;
  o.command = command;
  o.game = "pd";
  if (command == "gradient-field") o.game = "ultimatum";
  if (command == "tandem") {
    o.game = "tandem";
    o.learner_a.eta = o.learner_a.delta = 0.1;
  }
  return o;
}

// ---- configuration files ----

void CheckKeys(const Json& object, const std::vector<std::string>& allowed,
               const std::string& where) {
  if (!object.is_object()) throw UsageError(where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void Read(const Json& object, const char* key, T& target,
          const std::string& where) {
  if (!object.contains(key)) return;
  try {
    target = object.at(key).get<T>();
  } catch (const Json::exception&) {
    throw UsageError(std::string("invalid value for '") + key + "' in " +
                     where);
  }
}

LearnerOptions ReadLearner(const Json& j, LearnerOptions learner,
                           const std::string& where) {
  CheckKeys(j, {"kind", "eta", "delta", "sos_a", "sos_b"}, where);
  Read(j, "kind", learner.kind, where);
  Read(j, "eta", learner.eta, where);
  Read(j, "delta", learner.delta, where);
  Read(j, "sos_a", learner.sos_a, where);
  Read(j, "sos_b", learner.sos_b, where);
  return learner;
}

void ReadGame(const Json& j, Options& o) {
  if (j.is_string()) {
    o.game = j.get<std::string>();
    return;
  }
  CheckKeys(j, {"name", "payoffs"}, "game");
  Read(j, "name", o.game, "game");
  if (j.contains("payoffs")) {
    const Json& p = j.at("payoffs");
    CheckKeys(p, {"CC", "CD", "DC", "DD"}, "game.payoffs");
    std::array<OutcomePayoff, 4> payoffs{};
    for (int k = 0; k < 4; ++k) {
      std::array<double, 2> pair{};
      if (!p.contains(kOutcomeKeys[k])) {
        throw UsageError(std::string("game.payoffs needs ") + kOutcomeKeys[k]);
      }
      Read(p, kOutcomeKeys[k], pair, "game.payoffs");
      payoffs[k] = {pair[0], pair[1]};
    }
    o.payoffs = payoffs;
  }
}

void ApplyConfig(const Json& root, Options& o) {
  // A manifest reproduces its output through the embedded configuration.
  const Json& j = root.contains("manifest_version") ? root.at("config") : root;
  CheckKeys(j,
            {"game", "learner_a", "learner_b", "steps", "runs", "seed", "init",
             "init_sigma", "etas", "resolution", "run", "roster", "format"},
            "config");
  if (j.contains("game")) ReadGame(j.at("game"), o);
  if (j.contains("learner_a")) {
    o.learner_a = ReadLearner(j.at("learner_a"), o.learner_a, "learner_a");
  }
  if (j.contains("learner_b")) {
    o.learner_b = ReadLearner(j.at("learner_b"), o.learner_b, "learner_b");
  }
  Read(j, "steps", o.steps, "config");
  Read(j, "runs", o.runs, "config");
  Read(j, "seed", o.seed, "config");
  Read(j, "init", o.init, "config");
  if (j.contains("init_sigma") && !j.at("init_sigma").is_null()) {
    Read(j, "init_sigma", o.init_sigma, "config");
  }
  Read(j, "etas", o.etas, "config");
  Read(j, "resolution", o.resolution, "config");
  if (j.contains("run") && !j.at("run").is_null()) {
    int run = 0;
    Read(j, "run", run, "config");
    o.run = run;
  }
  Read(j, "format", o.format, "config");
  if (j.contains("roster")) {
    if (!j.at("roster").is_array()) throw UsageError("roster must be a list");
    o.roster.clear();
    for (const Json& e : j.at("roster")) {
      CheckKeys(e, {"name", "kind", "eta", "delta", "sos_a", "sos_b"},
                "roster entry");
      std::string name;
      Read(e, "name", name, "roster entry");
      Json learner = e;
      learner.erase("name");
      o.roster.emplace_back(name, ReadLearner(learner, {}, "roster entry"));
    }
  }
}

Json LearnerToJson(const LearnerOptions& l) {
  return {{"kind", l.kind},
          {"eta", l.eta},
          {"delta", l.delta},
          {"sos_a", l.sos_a},
          {"sos_b", l.sos_b}};
}

Json ConfigToJson(const Options& o, const ExperimentConfig& cfg) {
  Json game = o.game;
  if (o.payoffs) {
    Json payoffs = Json::object();
    for (int k = 0; k < 4; ++k) {
      payoffs[kOutcomeKeys[k]] = {(*o.payoffs)[k].first,
                                  (*o.payoffs)[k].second};
    }
    game = {{"name", o.game}, {"payoffs", payoffs}};
  }
  Json roster = Json::array();
  for (const auto& [name, l] : o.roster) {
    Json e = {{"name", name}};
    e.update(LearnerToJson(l));
    roster.push_back(e);
  }
  return {{"game", game},
          {"learner_a", LearnerToJson(o.learner_a)},
          {"learner_b", LearnerToJson(o.learner_b)},
          {"steps", o.steps},
          {"runs", o.runs},
          {"seed", o.seed},
          {"init", o.init},
          {"init_sigma", ResolvedInitSigma(cfg)},
          {"etas", o.etas},
          {"resolution", o.resolution},
          {"run", o.run ? Json(*o.run) : Json(nullptr)},
          {"roster", roster},
          {"format", o.format}};
}

// ---- resolution into library configurations ----

Game MakeGame(const Options& o) {
  if (o.payoffs && o.game != "custom") {
    throw UsageError("payoffs are only accepted for the custom game");
  }
  if (o.game == "pd") return PrisonersDilemma();
  if (o.game == "chicken") return Chicken();
  if (o.game == "ultimatum") return UltimatumGame{};
  if (o.game == "tandem") return TandemGame{};
  if (o.game == "custom") {
    if (!o.payoffs) throw UsageError("the custom game needs game.payoffs");
    const auto& p = *o.payoffs;
    try {
      return CustomMatrixGame(p[0], p[1], p[2], p[3]);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("unknown game: " + o.game);
}

LearnerSpec MakeSpec(const LearnerOptions& l) {
  LearnerSpec spec;
  spec.kind = ParseLearnerKind(l.kind);
  spec.lr = l.delta;
  spec.opp_lr = l.eta;
  spec.sos_a = l.sos_a;
  spec.sos_b = l.sos_b;
  ValidateSpec(spec);
  return spec;
}

ExperimentConfig MakeExperiment(const Options& o) {
  ExperimentConfig cfg;
  cfg.game = MakeGame(o);
  cfg.spec_a = MakeSpec(o.learner_a);
  cfg.spec_b = MakeSpec(o.learner_b);
  cfg.steps = o.steps;
  cfg.runs = o.runs;
  cfg.seed = o.seed;
  cfg.init = ParseInitScheme(o.init);
  cfg.init_sigma = o.init_sigma;
  ValidateConfig(cfg);
  return cfg;
}

Roster MakeRoster(const Options& o) {
  if (o.roster.empty()) return DefaultRoster();
  Roster roster;
  for (const auto& [name, l] : o.roster) roster.push_back({name, MakeSpec(l)});
  ValidateRoster(roster);
  return roster;
}

// Rejects every invalid combination before any computation starts.
void Validate(Options& o, ExperimentConfig& cfg) {
  if (o.format != "csv" && o.format != "json") {
    throw UsageError("unknown format: " + o.format);
  }
  if (o.init_sigma < 0.0 && o.init_sigma != -1.0) {
    throw UsageError("init_sigma must be non-negative");
  }
  try {
    cfg = MakeExperiment(o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const bool matrix = IsMatrixGame(cfg.game);
  if (o.command == "gradient-field") {
    if (o.game != "ultimatum") {
      throw UsageError("gradient-field supports only the ultimatum game");
    }
    if (o.resolution < 2) throw UsageError("resolution must be at least 2");
  }
  if (o.command == "tandem" && o.game != "tandem") {
    throw UsageError("the tandem command plays only the tandem game");
  }
  if ((o.command == "final-params" || o.command == "sweep-eta") && !matrix) {
    throw UsageError(o.command + " requires a 2x2 game");
  }
  if (o.command == "sweep-eta") {
    if (o.etas.empty()) throw UsageError("etas must not be empty");
    for (double eta : o.etas) {
      if (!(eta > 0.0)) throw UsageError("swept etas must be positive");
    }
  }
  if (o.command == "tournament") {
    try {
      MakeRoster(o);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (o.run && (o.command != "train" || *o.run < 0 || *o.run >= o.runs)) {
    throw UsageError("--run selects one of the train runs [0, runs)");
  }
}

// ---- output tables ----

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string CellText(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return FormatNumber(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

Json CellJson(const Cell& c) {
  struct Visitor {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(long long v) const { return v; }
    Json operator()(double v) const {
      return std::isfinite(v) ? Json(v) : Json(nullptr);
    }
    Json operator()(const std::string& v) const { return v; }
    Json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

std::string ToCsv(const Table& t) {
  std::ostringstream s;
  for (size_t k = 0; k < t.columns.size(); ++k) {
    s << (k ? "," : "") << t.columns[k];
  }
  s << "\n";
  for (const auto& row : t.rows) {
    for (size_t k = 0; k < row.size(); ++k)
      s << (k ? "," : "") << CellText(row[k]);
    s << "\n";
  }
  return s.str();
}

Json ToJson(const Table& t) {
  Json records = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (size_t k = 0; k < row.size(); ++k) r[t.columns[k]] = CellJson(row[k]);
    records.push_back(r);
  }
  return records;
}

Json MeanSdJson(const MeanSd& m) {
  return {{"mean", m.mean}, {"sd", m.sd}, {"se", m.se}, {"n", m.n}};
}

Json SosJson(const SosStats& s) {
  if (s.evaluations == 0) return {{"evaluations", 0}};
  return {{"evaluations", s.evaluations},
          {"min_alignment", s.min_alignment},
          {"min_p", s.min_p},
          {"max_p", s.max_p},
          {"guarantee_holds", s.Holds()}};
}

std::vector<std::string> ProbNames(const Game& game,
                                   const std::string& prefix) {
  if (IsMatrixGame(game)) {
    return {prefix + "pr_s", prefix + "pr_c_not_s", prefix + "pr_c_c",
            prefix + "pr_c_d"};
  }
  if (std::holds_alternative<UltimatumGame>(game)) {
    return {prefix == "a_" ? "a_p_fair" : "b_p_accept"};
  }
  return {};
}

std::vector<std::string> ThetaNames(const Game& game,
                                    const std::string& prefix) {
  std::vector<std::string> names;
  for (int i = 0; i < GameArity(game); ++i) {
    names.push_back(prefix + "theta_" + std::to_string(i));
  }
  return names;
}

std::vector<std::string> OutcomeNames(const Game& game) {
  if (!IsMatrixGame(game)) return {};
  return {"p_cc", "p_cd", "p_dc", "p_dd"};
}

void Append(std::vector<std::string>& to,
            const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

void Append(std::vector<Cell>& to, const std::vector<double>& from) {
  for (double v : from) to.emplace_back(v);
}

// ---- commands ----

struct Output {
  std::string data;  // main output file contents
  std::optional<Json> summary;
};

std::string Render(const Table& t, const std::string& format) {
  return format == "csv" ? ToCsv(t) : ToJson(t).dump(2) + "\n";
}

Output Train(const Options& o, const ExperimentConfig& cfg) {
  Table t;
  Json summary;
  if (o.run) {
    const RunRecord record = RunTraining(cfg, *o.run);
    t.columns = {"step"};
    Append(t.columns, ThetaNames(cfg.game, "a_"));
    Append(t.columns, ThetaNames(cfg.game, "b_"));
    Append(t.columns, ProbNames(cfg.game, "a_"));
    Append(t.columns, ProbNames(cfg.game, "b_"));
    Append(t.columns, {"payoff_a", "payoff_b"});
    Append(t.columns, OutcomeNames(cfg.game));
    Append(t.columns, {"sos_p_a", "sos_p_b"});
    for (size_t step = 0; step < record.states.size(); ++step) {
      const State& s = record.states[step];
      std::vector<Cell> row = {static_cast<long long>(step)};
      Append(row, s.theta_a);
      Append(row, s.theta_b);
      Append(row, s.probs_a);
      Append(row, s.probs_b);
      Append(row, {s.payoff.a, s.payoff.b});
      Append(row, s.outcomes);
      if (step < record.sos_p_a.size()) {
        Append(row, {record.sos_p_a[step], record.sos_p_b[step]});
      } else {
        row.insert(row.end(), 2, std::monostate{});
      }
      t.rows.push_back(std::move(row));
    }
    const RunSummary& r = record.summary;
    summary = {{"run", *o.run},
               {"seed", r.seed},
               {"diverged", r.diverged},
               {"completed_steps", r.completed_steps},
               {"final",
                {{"theta_a", r.final.theta_a},
                 {"theta_b", r.final.theta_b},
                 {"payoff_a", r.final.payoff.a},
                 {"payoff_b", r.final.payoff.b}}},
               {"sos", SosJson(r.sos)}};
    if (GameArity(cfg.game) == 1) {
      summary["final"]["sum"] = r.final.theta_a[0] + r.final.theta_b[0];
    }
    return {Render(t, o.format), summary};
  }

  const TrajectoryStats stats = FluctuationStats(cfg);
  t.columns = {"step", "payoff_a_mean", "payoff_a_sd", "payoff_b_mean",
               "payoff_b_sd"};
  Append(t.columns, ThetaNames(cfg.game, "a_mean_"));
  Append(t.columns, ThetaNames(cfg.game, "b_mean_"));
  Append(t.columns, ProbNames(cfg.game, "a_"));
  Append(t.columns, ProbNames(cfg.game, "b_"));
  Append(t.columns, OutcomeNames(cfg.game));
  for (size_t step = 0; step < stats.steps.size(); ++step) {
    const StepStats& s = stats.steps[step];
    std::vector<Cell> row = {static_cast<long long>(step)};
    Append(row,
           {s.payoff_a.mean, s.payoff_a.sd, s.payoff_b.mean, s.payoff_b.sd});
    Append(row, s.theta_a);
    Append(row, s.theta_b);
    Append(row, s.probs_a);
    Append(row, s.probs_b);
    Append(row, s.outcomes);
    t.rows.push_back(std::move(row));
  }
  summary = {{"runs", stats.runs}, {"diverged", stats.diverged}};
  if (!stats.steps.empty()) {
    const StepStats& last = stats.steps.back();
    Json final = {{"payoff_a", MeanSdJson(last.payoff_a)},
                  {"payoff_b", MeanSdJson(last.payoff_b)},
                  {"theta_a_mean", last.theta_a},
                  {"theta_b_mean", last.theta_b}};
    if (GameArity(cfg.game) == 1) {
      std::vector<double> sums;
      for (const RunSummary& r : stats.run_summaries) {
        if (!r.diverged)
          sums.push_back(r.final.theta_a[0] + r.final.theta_b[0]);
      }
      final["sum"] = MeanSdJson(Summarize(sums));
    }
    if (!last.outcomes.empty()) final["outcomes"] = last.outcomes;
    summary["final"] = final;
  }
  summary["sos"] = SosJson(stats.sos);
  return {Render(t, o.format), summary};
}

Output SweepEta(const Options& o, const ExperimentConfig& cfg) {
  const std::vector<SweepPoint> sweep = EtaSweep(cfg, o.etas);
  Table t;
  t.columns = {"eta"};
  for (const char* k :
       {"p_cc", "p_cd", "p_dc", "p_dd", "payoff_a", "payoff_b"}) {
    Append(t.columns, {std::string(k) + "_mean", std::string(k) + "_se"});
  }
  Append(t.columns, {"diverged", "runs"});
  SosStats sos;
  for (const SweepPoint& p : sweep) {
    const OutcomeSummary& s = p.summary;
    std::vector<Cell> row = {p.eta};
    for (const MeanSd& m : s.outcomes) Append(row, {m.mean, m.se});
    Append(row,
           {s.payoff_a.mean, s.payoff_a.se, s.payoff_b.mean, s.payoff_b.se});
    row.emplace_back(static_cast<long long>(s.diverged));
    row.emplace_back(static_cast<long long>(s.runs));
    t.rows.push_back(std::move(row));
    sos.Merge(s.sos);
  }
  return {Render(t, o.format), Json{{"sos", SosJson(sos)}}};
}

Output Tournament(const Options& o, const ExperimentConfig& cfg) {
  TournamentConfig tc;
  tc.game = cfg.game;
  tc.roster = MakeRoster(o);
  tc.steps = o.steps;
  tc.runs = o.runs;
  tc.seed = o.seed;
  const CrossPlayMatrix m = CrossPlay(tc);
  if (o.format == "json") {
    Json cells = Json::array();
    for (const auto& row : m.cells) {
      Json r = Json::array();
      for (const CrossPlayCell& c : row) {
        Json cell = MeanSdJson(c.payoff);
        cell["diverged"] = c.diverged;
        cell["best_response"] = c.best_response;
        r.push_back(cell);
      }
      cells.push_back(r);
    }
    const Json matrix = {
        {"names", m.names}, {"cells", cells}, {"sos", SosJson(m.sos)}};
    return {matrix.dump(2) + "\n", std::nullopt};
  }
  Table t;
  t.columns = {"row",       "column",        "payoff_mean", "payoff_sd",
               "payoff_se", "best_response", "diverged",    "runs"};
  for (size_t i = 0; i < m.cells.size(); ++i) {
    for (size_t j = 0; j < m.cells[i].size(); ++j) {
      const CrossPlayCell& c = m.cells[i][j];
      t.rows.push_back({m.names[i], m.names[j], c.payoff.mean, c.payoff.sd,
                        c.payoff.se, c.best_response,
                        static_cast<long long>(c.diverged),
                        static_cast<long long>(o.runs)});
    }
  }
  return {ToCsv(t), std::nullopt};
}

Output Field(const Options& o, const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"p_fair", "p_accept", "theta_a", "theta_b", "grad_a", "grad_b"};
  for (const FieldPoint& p : GradientField(cfg.spec_a, o.resolution)) {
    t.rows.push_back(
        {p.p_fair, p.p_accept, p.theta_a, p.theta_b, p.grad_a, p.grad_b});
  }
  return {Render(t, o.format), std::nullopt};
}

Output Tandem(const Options& o) {
  if (o.learner_a.eta != o.learner_a.delta) {
    throw UsageError("the tandem experiment uses delta = eta");
  }
  const auto results =
      TandemExperiment(o.learner_a.eta, o.steps, o.runs, o.seed);
  Table t;
  t.columns = {"learner_a",   "learner_b",     "step",        "payoff_a_mean",
               "payoff_a_sd", "payoff_b_mean", "payoff_b_sd", "sum_mean"};
  Json pairings = Json::array();
  for (const TandemResult& r : results) {
    const std::string a = LearnerKindName(r.kind_a);
    const std::string b = LearnerKindName(r.kind_b);
    for (size_t step = 0; step < r.trajectory.steps.size(); ++step) {
      const StepStats& s = r.trajectory.steps[step];
      t.rows.push_back({a, b, static_cast<long long>(step), s.payoff_a.mean,
                        s.payoff_a.sd, s.payoff_b.mean, s.payoff_b.sd,
                        s.theta_a[0] + s.theta_b[0]});
    }
    pairings.push_back({{"learner_a", a},
                        {"learner_b", b},
                        {"diverged", r.trajectory.diverged},
                        {"final_sum", MeanSdJson(Summarize(r.final_sums))},
                        {"sos", SosJson(r.trajectory.sos)}});
  }
  return {Render(t, o.format), Json{{"pairings", pairings}}};
}

Output FinalParameters(const Options& o, const ExperimentConfig& cfg) {
  const FinalParams f = FinalParamsSummary(cfg);
  Table t;
  t.columns = {"role", "payoff_mean", "payoff_sd"};
  for (const auto& name : ProbNames(cfg.game, "")) {
    Append(t.columns, {name + "_mean", name + "_sd"});
  }
  Append(t.columns, {"diverged", "runs"});
  for (const auto& [role, r] :
       {std::pair{"higher", &f.higher}, std::pair{"lower", &f.lower}}) {
    std::vector<Cell> row = {std::string(role), r->payoff.mean, r->payoff.sd};
    for (const MeanSd& m : r->probs) Append(row, {m.mean, m.sd});
    row.emplace_back(static_cast<long long>(f.diverged));
    row.emplace_back(static_cast<long long>(f.runs));
    t.rows.push_back(std::move(row));
  }
  return {Render(t, o.format), std::nullopt};
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  file << contents;
  file.close();
  if (!file) throw std::runtime_error("cannot write " + path);
}

void AddFlags(CLI::App* cmd, Flags& f) {
  const std::vector<std::string> kinds = {"naive", "la", "lola", "lola1",
                                          "sos"};
  cmd->add_option("--config", f.config, "JSON configuration file or manifest")
      ->check(CLI::ExistingFile);
  cmd->add_option("--game", f.game, "pd, chicken, ultimatum, tandem or custom")
      ->check(
          CLI::IsMember({"pd", "chicken", "ultimatum", "tandem", "custom"}));
  cmd->add_option("--learner-a", f.learner_a, "learner of player A")
      ->check(CLI::IsMember(kinds));
  cmd->add_option("--learner-b", f.learner_b, "learner of player B")
      ->check(CLI::IsMember(kinds));
  cmd->add_option("--eta-a", f.eta_a, "opponent learning rate imputed by A");
  cmd->add_option("--eta-b", f.eta_b, "opponent learning rate imputed by B");
  cmd->add_option("--delta-a", f.delta_a, "learning rate of A");
  cmd->add_option("--delta-b", f.delta_b, "learning rate of B");
  cmd->add_option("--steps", f.steps, "gradient steps per run (1000)");
  cmd->add_option("--runs", f.runs, "runs per configuration (100)");
  cmd->add_option("--seed", f.seed, "master seed (0)");
  cmd->add_option("--init", f.init, "gauss or egfb")
      ->check(CLI::IsMember({"gauss", "egfb"}));
  cmd->add_option("--init-sigma", f.init_sigma,
                  "initial standard deviation (0.1, tandem 1)");
  cmd->add_option("--etas", f.etas, "swept etas (0.1,0.3,1,3,10,30,100)")
      ->delimiter(',');
  cmd->add_option("--resolution", f.resolution,
                  "gradient-field grid size (25)");
  cmd->add_option("--run", f.run, "train: write this single run");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "output path");
}

Options Resolve(const std::string& command, const Flags& f) {
  Options o = Defaults(command);
  if (f.config) {
    std::ifstream file(*f.config);
    Json j;
    try {
      j = Json::parse(file);
    } catch (const Json::exception& e) {
      throw UsageError("cannot parse " + *f.config + ": " + e.what());
    }
    ApplyConfig(j, o);
  }
  if (f.game) {
    o.game = *f.game;
    if (o.game != "custom") o.payoffs.reset();
  }
  if (f.learner_a) o.learner_a.kind = *f.learner_a;
  if (f.learner_b) o.learner_b.kind = *f.learner_b;
  if (f.eta_a) o.learner_a.eta = *f.eta_a;
  if (f.eta_b) o.learner_b.eta = *f.eta_b;
  if (f.delta_a) o.learner_a.delta = *f.delta_a;
  if (f.delta_b) o.learner_b.delta = *f.delta_b;
  // The tandem experiment steps with delta = eta.
  if (command == "tandem" && f.eta_a && !f.delta_a)
    o.learner_a.delta = *f.eta_a;
  if (f.steps) o.steps = *f.steps;
  if (f.runs) o.runs = *f.runs;
  if (f.seed) o.seed = *f.seed;
  if (f.init) o.init = *f.init;
  if (f.init_sigma) o.init_sigma = *f.init_sigma;
  if (f.etas) o.etas = *f.etas;
  if (f.resolution) o.resolution = *f.resolution;
  if (f.run) o.run = *f.run;
  if (f.format) o.format = *f.format;
  o.out = f.out ? *f.out : "oppshape_" + command + "." + o.format;
  if (command == "tournament" && o.roster.empty()) {
    for (const RosterEntry& e : DefaultRoster()) {
      o.roster.emplace_back(
          e.name, LearnerOptions{LearnerKindName(e.spec.kind), e.spec.opp_lr,
                                 e.spec.lr, e.spec.sos_a, e.spec.sos_b});
    }
  }
  return o;
}

int Execute(const std::string& command, const Flags& flags, std::ostream& out) {
  Options o = Resolve(command, flags);
  ExperimentConfig cfg;
  Validate(o, cfg);

  Output output;
  if (command == "train") output = Train(o, cfg);
  if (command == "sweep-eta") output = SweepEta(o, cfg);
  if (command == "tournament") output = Tournament(o, cfg);
  if (command == "gradient-field") output = Field(o, cfg);
  if (command == "tandem") output = Tandem(o);
  if (command == "final-params") output = FinalParameters(o, cfg);

  std::vector<std::string> files = {o.out};
  const std::string summary_path = o.out + ".summary.json";
  if (output.summary) files.push_back(summary_path);
  const Json manifest = {{"manifest_version", 1},
                         {"tool", "oppshape"},
                         {"version", kVersion},
                         {"command", command},
                         {"config", ConfigToJson(o, cfg)},
                         {"outputs", files}};
  WriteFile(o.out, output.data);
  if (output.summary) WriteFile(summary_path, output.summary->dump(2) + "\n");
  WriteFile(o.out + ".manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << o.out << "\n";
  return 0;
}

}  // namespace

std::string FormatNumber(double value) {
  std::array<char, 64> buffer{};
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                    std::chars_format::general, 9);
  return std::string(buffer.data(), result.ptr);
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Opponent-shaping learners in games with mutual transparency",
               "oppshape"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  const std::map<std::string, std::string> commands = {
      {"train", "per-step payoffs and policies of training runs"},
      {"sweep-eta",
       "final outcome probabilities across opponent learning rates"},
      {"tournament", "cross-play payoff matrix of a learner roster"},
      {"gradient-field", "ultimatum-game gradients over probability space"},
      {"tandem", "LOLA and SOS learners in the tandem game"},
      {"final-params", "final policies split by payoff rank"}};
  Flags flags;
  std::string chosen;
  for (const auto& [name, description] : commands) {
    CLI::App* cmd = app.add_subcommand(name, description);
    AddFlags(cmd, flags);
    cmd->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    return Execute(chosen, flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oppshape::cli
