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

#include "oppshape/learners.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oppshape {
namespace {

double Dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

std::vector<double> Add(const std::vector<double>& x,
                        const std::vector<double>& y, double scale = 1.0) {
  std::vector<double> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + scale * y[i];
  return r;
}

}  // namespace

std::string LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kNaive:
      return "naive";
    case LearnerKind::kLookAhead:
      return "la";
    case LearnerKind::kLolaExact:
      return "lola";
    case LearnerKind::kLolaFirstOrder:
      return "lola1";
    case LearnerKind::kSos:
      return "sos";
  }
  return "unknown";
}

LearnerKind ParseLearnerKind(const std::string& name) {
  for (LearnerKind kind :
       {LearnerKind::kNaive, LearnerKind::kLookAhead, LearnerKind::kLolaExact,
        LearnerKind::kLolaFirstOrder, LearnerKind::kSos}) {
    if (LearnerKindName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown learner '" + name +
                              "' (expected naive, la, lola, lola1 or sos)");
}

void ValidateSpec(const LearnerSpec& spec) {
  if (!(spec.lr >= 0.0) || !std::isfinite(spec.lr)) {
    throw std::invalid_argument("learner: learning rate must be >= 0");
  }
  if (!(spec.opp_lr >= 0.0) || !std::isfinite(spec.opp_lr)) {
    throw std::invalid_argument("learner: opponent learning rate must be >= 0");
  }
  if (!(spec.sos_a > 0.0 && spec.sos_a < 1.0) ||
      !(spec.sos_b > 0.0 && spec.sos_b < 1.0)) {
    throw std::invalid_argument("learner: SOS a and b must lie in (0, 1)");
  }
}

LocalExpansion SwapRoles(const LocalExpansion& e) {
  LocalExpansion s;
  s.n_self = e.n_opp;
  s.n_opp = e.n_self;
  for (int p = 0; p < 2; ++p) {
    const int q = 1 - p;
    s.value[p] = e.value[q];
    s.d_self[p] = e.d_opp[q];
    s.d_opp[p] = e.d_self[q];
    for (int i = 0; i < e.n_opp; ++i) {
      for (int j = 0; j < e.n_self; ++j) s.mixed[p][i][j] = e.mixed[q][j][i];
    }
  }
  return s;
}

FirstOrderTerms FirstOrderTermsFrom(const LocalExpansion& e, double eta) {
  FirstOrderTerms t;
  t.naive.assign(e.d_self[0].begin(), e.d_self[0].begin() + e.n_self);
  t.anticipate.assign(e.n_self, 0.0);
  t.shape.assign(e.n_self, 0.0);
  for (int i = 0; i < e.n_self; ++i) {
    double anticipate = 0.0;
    double shape = 0.0;
    for (int j = 0; j < e.n_opp; ++j) {
      anticipate += e.mixed[0][i][j] * e.d_opp[1][j];
      shape += e.mixed[1][i][j] * e.d_opp[0][j];
    }
    t.anticipate[i] = eta * anticipate;
    t.shape[i] = eta * shape;
  }
  return t;
}

double SosScaling(std::span<const double> naive, std::span<const double> la,
                  std::span<const double> shape, double a, double b) {
  const double alignment = Dot(shape, la);
  double p1 = 1.0;
  if (alignment < 0.0) p1 = std::min(1.0, -a * Dot(la, la) / alignment);
  const double naive_sq = Dot(naive, naive);
  const double p2 = std::sqrt(naive_sq) < b ? naive_sq : 1.0;
  return std::min(p1, p2);
}

GradientReport MakeReport(const LearnerSpec& spec, const FirstOrderTerms& terms,
                          const std::vector<double>* exact) {
  GradientReport r;
  r.naive = terms.naive;
  r.look_ahead = Add(terms.naive, terms.anticipate);
  r.shaping = terms.shape;
  switch (spec.kind) {
    case LearnerKind::kNaive:
      r.final = r.naive;
      break;
    case LearnerKind::kLookAhead:
      r.final = r.look_ahead;
      break;
    case LearnerKind::kLolaFirstOrder:
      r.final = Add(r.look_ahead, r.shaping);
      break;
    case LearnerKind::kLolaExact:
      if (exact == nullptr) {
        throw std::invalid_argument(
            "MakeReport: exact LOLA needs its gradient");
      }
      r.final = *exact;
      break;
    case LearnerKind::kSos:
      r.sos_p =
          SosScaling(r.naive, r.look_ahead, r.shaping, spec.sos_a, spec.sos_b);
      r.final = Add(r.look_ahead, r.shaping, r.sos_p);
      break;
  }
  r.la_alignment = Dot(r.final, r.look_ahead);
  return r;
}

namespace {

GradientReport ReportFrom(const LearnerSpec& spec, const GameModel& model,
                          const LocalExpansion& local,
                          std::span<const double> self,
                          std::span<const double> opp, bool second_player) {
  const double eta = spec.kind == LearnerKind::kNaive ? 0.0 : spec.opp_lr;
  const FirstOrderTerms terms = FirstOrderTermsFrom(local, eta);
  if (spec.kind != LearnerKind::kLolaExact) return MakeReport(spec, terms);
  const std::vector<double> exact =
      second_player ? LolaExactGradient(SwapRoles(model), self, opp, eta)
                    : LolaExactGradient(model, self, opp, eta);
  return MakeReport(spec, terms, &exact);
}

}  // namespace

GradientReport ComputeGradient(const LearnerSpec& spec, const Game& game,
                               std::span<const double> self,
                               std::span<const double> opp,
                               bool second_player) {
  const GameModel model{&game};
  const LocalExpansion local = second_player
                                   ? SwapRoles(Expand(model, opp, self))
                                   : Expand(model, self, opp);
  return ReportFrom(spec, model, local, self, opp, second_player);
}

StepResult UpdateStep(const LearnerSpec& spec_a, const LearnerSpec& spec_b,
                      const Game& game, const Params& theta_a,
                      const Params& theta_b) {
  const GameModel model{&game};
  const LocalExpansion local = Expand(model, theta_a, theta_b);
  StepResult result;
  result.report_a = ReportFrom(spec_a, model, local, theta_a, theta_b, false);
  result.report_b =
      ReportFrom(spec_b, model, SwapRoles(local), theta_b, theta_a, true);
  result.next_a = Add(theta_a, result.report_a.final, spec_a.lr);
  result.next_b = Add(theta_b, result.report_b.final, spec_b.lr);
  return result;
}

}  // namespace oppshape
