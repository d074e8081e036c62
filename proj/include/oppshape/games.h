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

#ifndef OPPSHAPE_GAMES_H_
#define OPPSHAPE_GAMES_H_

#include <array>
#include <string>
#include <utility>
#include <variant>

#include "oppshape/dual.h"

namespace oppshape {

// Expected payoffs of a two-player interaction. `a` belongs to the player
// whose parameters are passed first, `b` to the other one.
template <typename T>
struct Payoffs {
  T a;
  T b;
};

enum Action { kCooperate = 0, kDefect = 1 };

// A two-action game. Both tables are indexed [action of A][action of B],
// so for a symmetric game payoff_b[i][j] == payoff_a[j][i].
struct MatrixGame {
  std::string name;
  std::array<std::array<double, 2>, 2> payoff_a;
  std::array<std::array<double, 2>, 2> payoff_b;
  std::array<std::string, 2> labels;
};

// (payoff to A, payoff to B) for one joint outcome.
using OutcomePayoff = std::pair<double, double>;

MatrixGame PrisonersDilemma();
MatrixGame Chicken();
// Outcomes listed as CC, CD, DC, DD from A's point of view.
MatrixGame CustomMatrixGame(const OutcomePayoff& cc, const OutcomePayoff& cd,
                            const OutcomePayoff& dc, const OutcomePayoff& dd);

// Binary ultimatum game. A's parameter sets p_fair = sigmoid(theta_a), B's
// sets the probability of accepting an unfair split. Fair splits are always
// accepted.
struct UltimatumGame {};

// V_A = -(x+y)^2 + 2x, V_B = -(x+y)^2 + 2y with x, y the raw parameters.
struct TandemGame {};

using Game = std::variant<MatrixGame, UltimatumGame, TandemGame>;

std::string GameName(const Game& game);
// Number of parameters each player controls.
int GameArity(const Game& game);
bool IsMatrixGame(const Game& game);

template <typename T>
Payoffs<T> UltimatumPayoffs(const T& theta_a, const T& theta_b) {
  const T p_fair = Sigmoid(theta_a);
  const T p_accept = Sigmoid(theta_b);
  const T unfair_accepted = (1.0 - p_fair) * p_accept;
  return {5.0 * p_fair + 8.0 * unfair_accepted,
          5.0 * p_fair + 2.0 * unfair_accepted};
}

template <typename T>
Payoffs<T> TandemPayoffs(const T& x, const T& y) {
  const T sum = x + y;
  const T coordination = -(sum * sum);
  return {coordination + 2.0 * x, coordination + 2.0 * y};
}

// Closed-form naive gradients of the ultimatum game, used as an oracle:
// ((5 - 8 p_accept) p_fair', 2 (1 - p_fair) p_accept').
std::pair<double, double> UltimatumNaiveGradients(double theta_a,
                                                  double theta_b);

// x + y on the line of stable fixed points of two exact LOLA learners in the
// tandem game with opponent learning rate eta in [0, 0.5).
double TandemSfpSum(double eta);

}  // namespace oppshape

#endif  // OPPSHAPE_GAMES_H_
