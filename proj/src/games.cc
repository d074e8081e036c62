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

#include "oppshape/games.h"

#include <cmath>
#include <stdexcept>

namespace oppshape {
namespace {

MatrixGame SymmetricGame(std::string name, double reward, double sucker,
                         double temptation, double punishment,
                         std::array<std::string, 2> labels) {
  MatrixGame game;
  game.name = std::move(name);
  game.payoff_a = {{{reward, sucker}, {temptation, punishment}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) game.payoff_b[i][j] = game.payoff_a[j][i];
  }
  game.labels = std::move(labels);
  return game;
}

}  // namespace

MatrixGame PrisonersDilemma() {
  return SymmetricGame("pd", /*reward=*/30, /*sucker=*/0, /*temptation=*/40,
                       /*punishment=*/10, {"cooperate", "defect"});
}

MatrixGame Chicken() {
  return SymmetricGame("chicken", /*reward=*/30, /*sucker=*/0,
                       /*temptation=*/40, /*punishment=*/-30,
                       {"swerve", "straight"});
}

MatrixGame CustomMatrixGame(const OutcomePayoff& cc, const OutcomePayoff& cd,
                            const OutcomePayoff& dc, const OutcomePayoff& dd) {
  MatrixGame game;
  game.name = "custom";
  const std::array<std::array<OutcomePayoff, 2>, 2> table = {
      {{cc, cd}, {dc, dd}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto& [pa, pb] = table[i][j];
      if (!std::isfinite(pa) || !std::isfinite(pb)) {
        throw std::invalid_argument("custom game: payoffs must be finite");
      }
      game.payoff_a[i][j] = pa;
      game.payoff_b[i][j] = pb;
    }
  }
  game.labels = {"cooperate", "defect"};
  return game;
}

std::string GameName(const Game& game) {
  struct Visitor {
    std::string operator()(const MatrixGame& g) const { return g.name; }
    std::string operator()(const UltimatumGame&) const { return "ultimatum"; }
    std::string operator()(const TandemGame&) const { return "tandem"; }
  };
  return std::visit(Visitor{}, game);
}

int GameArity(const Game& game) { return IsMatrixGame(game) ? 4 : 1; }

bool IsMatrixGame(const Game& game) {
  return std::holds_alternative<MatrixGame>(game);
}

std::pair<double, double> UltimatumNaiveGradients(double theta_a,
                                                  double theta_b) {
  const double p_fair = Sigmoid(theta_a);
  const double p_accept = Sigmoid(theta_b);
  const double d_fair = p_fair * (1.0 - p_fair);
  const double d_accept = p_accept * (1.0 - p_accept);
  return {(5.0 - 8.0 * p_accept) * d_fair, 2.0 * (1.0 - p_fair) * d_accept};
}

double TandemSfpSum(double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw std::domain_error("TandemSfpSum: eta must lie in [0, 0.5)");
  }
  const double denom = (1.0 - 2.0 * eta) * (1.0 - 2.0 * eta);
  return (1.0 - 2.0 * eta + 4.0 * eta * eta) / denom;
}

}  // namespace oppshape
