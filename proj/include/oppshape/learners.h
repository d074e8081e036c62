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

#ifndef OPPSHAPE_LEARNERS_H_
#define OPPSHAPE_LEARNERS_H_

// Gradient operators for opponent-aware learners.
//
// A payoff model is any callable that, for each scalar type T used below
// (double, Dual<double, 4> and Dual<Dual<double, 4>, 4>), maps
// (std::span<const T> self, std::span<const T> opp) to Payoffs<T> with
// `a` the payoff of `self` and `b` the payoff of `opp`. GameModel adapts a
// Game; SwapRoles gives the second player's point of view.
//
// With x the own and y the opponent parameters and eta the opponent learning
// rate this learner imputes, the operators are
//
//   naive      grad_x V_self
//   anticipate eta * (d2 V_self / dx dy) . grad_y V_opp
//   shape      eta * (d2 V_opp / dx dy) . grad_y V_self
//   LA         naive + anticipate
//   LOLA       grad_x V_self(x, y + eta grad_y V_opp(x, y)), exact
//   LOLA-1     naive + anticipate + shape
//   SOS        LA + p * shape, p chosen per player by SosScaling.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "oppshape/dual.h"
#include "oppshape/games.h"
#include "oppshape/valuefn.h"

namespace oppshape {

// Largest per-player parameter count.
inline constexpr int kMaxArity = 4;

enum class LearnerKind {
  kNaive,
  kLookAhead,
  kLolaExact,
  kLolaFirstOrder,
  kSos
};

std::string LearnerKindName(LearnerKind kind);
// Accepts naive, la, lola, lola1 and sos.
LearnerKind ParseLearnerKind(const std::string& name);

struct LearnerSpec {
  LearnerKind kind = LearnerKind::kNaive;
  double lr = 1.0;      // own learning rate delta
  double opp_lr = 1.0;  // opponent learning rate eta, unused by naive learners
  double sos_a = 0.5;
  double sos_b = 0.1;
};

// Throws std::invalid_argument for negative rates or a, b outside (0, 1).
void ValidateSpec(const LearnerSpec& spec);

struct GradientReport {
  std::vector<double> naive;
  std::vector<double> look_ahead;
  std::vector<double> shaping;
  std::vector<double> final;  // the update direction
  double sos_p = 1.0;         // 1 unless the learner is SOS
  // <final, look_ahead>; non-negative for SOS learners.
  double la_alignment = 0.0;
};

struct FirstOrderTerms {
  std::vector<double> naive;
  std::vector<double> anticipate;
  std::vector<double> shape;
};

// Values, gradients and the mixed second-derivative block of both payoffs of
// a model around (self, opp). Index 0 is the `a` payoff, 1 the `b` payoff.
struct LocalExpansion {
  int n_self = 0;
  int n_opp = 0;
  std::array<double, 2> value{};
  std::array<std::array<double, kMaxArity>, 2> d_self{};
  std::array<std::array<double, kMaxArity>, 2> d_opp{};
  // mixed[p][i][j] = d2 V_p / d self_i d opp_j
  std::array<std::array<std::array<double, kMaxArity>, kMaxArity>, 2> mixed{};
};

struct GameModel {
  const Game* game;

  template <typename T>
  Payoffs<T> operator()(std::span<const T> self, std::span<const T> opp) const {
    return EvaluatePayoffs<T>(*game, self, opp);
  }
};

template <typename Model>
auto SwapRoles(const Model& model) {
  return [&model](auto self, auto opp) {
    const auto v = model(opp, self);
    return decltype(v){v.b, v.a};
  };
}

namespace internal {

inline void CheckArity(std::span<const double> self,
                       std::span<const double> opp) {
  if (self.empty() || opp.empty() || self.size() > kMaxArity ||
      opp.size() > kMaxArity) {
    throw std::invalid_argument("learner: unsupported parameter count");
  }
}

}  // namespace internal

template <typename Model>
std::vector<double> NaiveGradient(const Model& model,
                                  std::span<const double> self,
                                  std::span<const double> opp) {
  internal::CheckArity(self, opp);
  using S = Dual<double, kMaxArity>;
  std::array<S, kMaxArity> y{};
  for (size_t j = 0; j < opp.size(); ++j) y[j] = S(opp[j]);
  const std::span<const S> y_span(y.data(), opp.size());
  return Gradient<kMaxArity>([&](auto x) { return model(x, y_span).a; }, self);
}

// One evaluation with own parameters seeded at the outer and opponent
// parameters at the inner differentiation level.
template <typename Model>
LocalExpansion Expand(const Model& model, std::span<const double> self,
                      std::span<const double> opp) {
  internal::CheckArity(self, opp);
  using Inner = Dual<double, kMaxArity>;
  using Outer = Dual<Inner, kMaxArity>;
  const int n = static_cast<int>(self.size());
  const int m = static_cast<int>(opp.size());
  std::array<Outer, kMaxArity> x{};
  std::array<Outer, kMaxArity> y{};
  for (int i = 0; i < n; ++i) x[i] = Outer::Variable(Inner(self[i]), i);
  for (int j = 0; j < m; ++j) y[j] = Outer(Inner::Variable(opp[j], j));
  const Payoffs<Outer> v = model(std::span<const Outer>(x.data(), n),
                                 std::span<const Outer>(y.data(), m));
  LocalExpansion e;
  e.n_self = n;
  e.n_opp = m;
  const std::array<const Outer*, 2> payoffs = {&v.a, &v.b};
  for (int p = 0; p < 2; ++p) {
    const Outer& f = *payoffs[p];
    e.value[p] = f.value().value();
    for (int i = 0; i < n; ++i) e.d_self[p][i] = f.d(i).value();
    for (int j = 0; j < m; ++j) e.d_opp[p][j] = f.value().d(j);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) e.mixed[p][i][j] = f.d(i).d(j);
    }
  }
  return e;
}

// The same expansion seen from the other player.
LocalExpansion SwapRoles(const LocalExpansion& e);

// First-order LOLA terms for the player owning `self` in the expansion.
FirstOrderTerms FirstOrderTermsFrom(const LocalExpansion& e, double eta);

template <typename Model>
FirstOrderTerms LolaFirstOrderTerms(const Model& model,
                                    std::span<const double> self,
                                    std::span<const double> opp, double eta) {
  return FirstOrderTermsFrom(Expand(model, self, opp), eta);
}

// Exact LOLA: differentiates through the opponent's anticipated gradient step,
// itself computed by an inner Gradient call.
template <typename Model>
std::vector<double> LolaExactGradient(const Model& model,
                                      std::span<const double> self,
                                      std::span<const double> opp, double eta) {
  internal::CheckArity(self, opp);
  const int n = static_cast<int>(self.size());
  const int m = static_cast<int>(opp.size());
  auto shifted_payoff = [&](auto x) {
    using S = typename decltype(x)::value_type;
    std::array<S, kMaxArity> y{};
    for (int j = 0; j < m; ++j) y[j] = S(opp[j]);
    auto opp_payoff = [&](auto yy) {
      using U = typename decltype(yy)::value_type;
      std::array<U, kMaxArity> xs{};
      for (int i = 0; i < n; ++i) xs[i] = U(x[i]);
      return model(std::span<const U>(xs.data(), n), yy).b;
    };
    const std::vector<S> step =
        Gradient<kMaxArity>(opp_payoff, std::span<const S>(y.data(), m));
    for (int j = 0; j < m; ++j) y[j] = y[j] + eta * step[j];
    return model(x, std::span<const S>(y.data(), m)).a;
  };
  return Gradient<kMaxArity>(shifted_payoff, self);
}

// Per-player SOS scale p = min(p1, p2):
//   p1 = 1 if <shape, la> >= 0, else min(1, -a |la|^2 / <shape, la>)
//   p2 = |naive|^2 if |naive| < b, else 1.
double SosScaling(std::span<const double> naive, std::span<const double> la,
                  std::span<const double> shape, double a, double b);

// Assembles the report of a learner from its first-order terms. For exact
// LOLA the caller supplies the exact gradient as `exact`.
GradientReport MakeReport(const LearnerSpec& spec, const FirstOrderTerms& terms,
                          const std::vector<double>* exact = nullptr);

template <typename Model>
GradientReport SosGradient(const Model& model, std::span<const double> self,
                           std::span<const double> opp, double eta, double a,
                           double b) {
  LearnerSpec spec;
  spec.kind = LearnerKind::kSos;
  spec.opp_lr = eta;
  spec.sos_a = a;
  spec.sos_b = b;
  return MakeReport(spec, LolaFirstOrderTerms(model, self, opp, eta));
}

// Gradient report of one learner for a game.
GradientReport ComputeGradient(const LearnerSpec& spec, const Game& game,
                               std::span<const double> self,
                               std::span<const double> opp, bool second_player);

struct StepResult {
  Params next_a;
  Params next_b;
  GradientReport report_a;
  GradientReport report_b;
};

// Simultaneous gradient-ascent step: both reports are computed at the current
// (theta_a, theta_b), then theta += lr * final.
StepResult UpdateStep(const LearnerSpec& spec_a, const LearnerSpec& spec_b,
                      const Game& game, const Params& theta_a,
                      const Params& theta_b);

}  // namespace oppshape

#endif  // OPPSHAPE_LEARNERS_H_
