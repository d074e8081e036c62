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

#ifndef OPPSHAPE_VALUEFN_H_
#define OPPSHAPE_VALUEFN_H_

// Parameter-to-payoff pipeline. In a transparent matrix game each player has
// four raw parameters, in this fixed order:
//
//   0  theta_S      Pr[S]      predict the opponent (clamped to 1 - epsilon)
//   1  theta_C|~S   Pr[C|~S]   cooperate when acting independently
//   2  theta_C|C    Pr[C|C]    cooperate after predicted cooperation
//   3  theta_C|D    Pr[C|D]    cooperate after predicted defection
//
// Each goes through a sigmoid; only the prediction probability is clamped.

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "oppshape/games.h"
#include "oppshape/transparency.h"

namespace oppshape {

inline constexpr int kTransparentArity = 4;

enum PolicyParam {
  kPredictParam = 0,
  kIndependentParam = 1,
  kAfterCooperateParam = 2,
  kAfterDefectParam = 3,
};

// A player's raw parameters.
using Params = std::vector<double>;

template <typename T>
TransparentPolicy<T, 2> ParamsToPolicy(std::span<const T> theta) {
  if (theta.size() != kTransparentArity) {
    throw std::invalid_argument("ParamsToPolicy: expected 4 parameters");
  }
  const T independent = Sigmoid(theta[kIndependentParam]);
  const T after_c = Sigmoid(theta[kAfterCooperateParam]);
  const T after_d = Sigmoid(theta[kAfterDefectParam]);
  TransparentPolicy<T, 2> policy;
  policy.predict =
      ClampMax(Sigmoid(theta[kPredictParam]), 1.0 - kGroundingEpsilon);
  policy.independent = {independent, 1.0 - independent};
  policy.reaction = {{{after_c, after_d}, {1.0 - after_c, 1.0 - after_d}}};
  return policy;
}

template <typename T>
Payoffs<T> TransparentPayoffs(const MatrixGame& game, std::span<const T> a,
                              std::span<const T> b) {
  const auto [w_a, w_b] =
      TransparentDistributions(ParamsToPolicy(a), ParamsToPolicy(b));
  Payoffs<T> v{T(0.0), T(0.0)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const T joint = w_a[i] * w_b[j];
      v.a = v.a + joint * game.payoff_a[i][j];
      v.b = v.b + joint * game.payoff_b[i][j];
    }
  }
  return v;
}

// Expected payoffs (V_A, V_B) of any supported game, generic over the scalar
// so that derivatives of every order flow through.
template <typename T>
Payoffs<T> EvaluatePayoffs(const Game& game, std::span<const T> a,
                           std::span<const T> b) {
  if (const auto* matrix = std::get_if<MatrixGame>(&game)) {
    return TransparentPayoffs<T>(*matrix, a, b);
  }
  if (a.size() != 1 || b.size() != 1) {
    throw std::invalid_argument("EvaluatePayoffs: expected one parameter each");
  }
  if (std::holds_alternative<UltimatumGame>(game)) {
    return UltimatumPayoffs(a[0], b[0]);
  }
  return TandemPayoffs(a[0], b[0]);
}

Payoffs<double> ExpectedPayoffs(const Game& game, const Params& a,
                                const Params& b);

// (Pr[S], Pr[C|~S], Pr[C|C], Pr[C|D]) after clamping.
std::array<double, 4> PolicyProbabilities(const Params& theta);

// Probability that each player cooperates, (w_A[C], w_B[C]).
std::pair<double, double> CooperationProbabilities(const Params& a,
                                                   const Params& b);

// (P_CC, P_CD, P_DC, P_DD), the outer product of the two action
// distributions.
std::array<double, 4> OutcomeProbabilities(const Params& a, const Params& b);

}  // namespace oppshape

#endif  // OPPSHAPE_VALUEFN_H_
