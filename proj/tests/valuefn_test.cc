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

#include "oppshape/valuefn.h"

#include <random>

#include "gtest/gtest.h"
#include "oracles.h"

namespace oppshape {
namespace {

using testing::FdGradient;

const Params kAlwaysCooperate = {-40.0, 40.0, 0.0, 0.0};
const Params kAlwaysDefect = {-40.0, -40.0, 0.0, 0.0};
const Params kFairBot = {40.0, 40.0, 40.0, -40.0};

TEST(ParamsToPolicyTest, ZeroParameters) {
  const auto p = PolicyProbabilities({0, 0, 0, 0});
  for (double x : p) EXPECT_DOUBLE_EQ(x, 0.5);
  const auto policy = ParamsToPolicy<double>(Params{0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(policy.reaction[kDefect][kCooperate], 0.5);
  EXPECT_DOUBLE_EQ(policy.independent[kDefect], 0.5);
}

TEST(ParamsToPolicyTest, NearFairBotInitialization) {
  const auto p = PolicyProbabilities({3, 3, 3, -3});
  EXPECT_NEAR(p[kPredictParam], 0.953, 5e-4);
  EXPECT_NEAR(p[kIndependentParam], 0.953, 5e-4);
  EXPECT_NEAR(p[kAfterCooperateParam], 0.953, 5e-4);
  EXPECT_NEAR(p[kAfterDefectParam], 0.047, 5e-4);
}

TEST(ParamsToPolicyTest, PredictionIsClamped) {
  const auto p = PolicyProbabilities({10, 0, 0, 0});
  EXPECT_EQ(p[kPredictParam], 1.0 - kGroundingEpsilon);
  // The other probabilities are not clamped.
  EXPECT_GT(PolicyProbabilities({0, 10, 10, 10})[kIndependentParam], 0.9999);
}

TEST(ParamsToPolicyTest, WrongArityThrows) {
  EXPECT_THROW(ParamsToPolicy<double>(Params{0, 0, 0}), std::invalid_argument);
}

TEST(ParamsToPolicyTest, ClampedPredictionReceivesNoGradient) {
  const Game pd = PrisonersDilemma();
  const Params b = {0.2, 0.1, -0.3, 0.4};
  const auto g = Gradient<4>(
      [&](auto x) {
        using T = typename decltype(x)::value_type;
        std::array<T, 4> y;
        for (int i = 0; i < 4; ++i) y[i] = T(b[i]);
        return EvaluatePayoffs<T>(pd, x, std::span<const T>(y)).a;
      },
      Params{10.0, 0.3, 0.2, -0.1});
  EXPECT_EQ(g[kPredictParam], 0.0);
  EXPECT_NE(g[kIndependentParam], 0.0);
}

TEST(ExpectedPayoffsTest, MutualCooperation) {
  const Game pd = PrisonersDilemma();
  const auto v = ExpectedPayoffs(pd, kAlwaysCooperate, kAlwaysCooperate);
  EXPECT_NEAR(v.a, 30.0, 1e-6);
  EXPECT_NEAR(v.b, 30.0, 1e-6);
}

TEST(ExpectedPayoffsTest, FairBots) {
  const auto v = ExpectedPayoffs(PrisonersDilemma(), kFairBot, kFairBot);
  EXPECT_NEAR(v.a, 30.0, 1e-6);
  EXPECT_NEAR(v.b, 30.0, 1e-6);
}

TEST(ExpectedPayoffsTest, FairBotAgainstDefector) {
  const auto v = ExpectedPayoffs(PrisonersDilemma(), kFairBot, kAlwaysDefect);
  EXPECT_NEAR(v.a, 9.99, 1e-6);
  EXPECT_NEAR(v.b, 10.03, 1e-6);
}

TEST(OutcomeProbabilitiesTest, Examples) {
  const auto cc = OutcomeProbabilities(kAlwaysCooperate, kAlwaysCooperate);
  EXPECT_NEAR(cc[0], 1.0, 1e-8);
  EXPECT_NEAR(cc[3], 0.0, 1e-8);
  const auto uniform = OutcomeProbabilities({0, 0, 0, 0}, {0, 0, 0, 0});
  for (double p : uniform) EXPECT_NEAR(p, 0.25, 1e-12);
  const auto fd = OutcomeProbabilities(kFairBot, kAlwaysDefect);
  EXPECT_NEAR(fd[1], 0.001, 1e-8);  // CD
  EXPECT_NEAR(fd[3], 0.999, 1e-8);  // DD
}

TEST(OutcomeProbabilitiesTest, IsOuterProductOfCooperation) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::RandomVector(rng, 4, 2.0);
    const auto b = testing::RandomVector(rng, 4, 2.0);
    const auto p = OutcomeProbabilities(a, b);
    const auto [ca, cb] = CooperationProbabilities(a, b);
    EXPECT_NEAR(p[0], ca * cb, 1e-14);
    EXPECT_NEAR(p[3], (1 - ca) * (1 - cb), 1e-14);
    EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-9);
  }
}

class PayoffGradientTest : public ::testing::TestWithParam<MatrixGame> {};

TEST_P(PayoffGradientTest, MatchesFiniteDifferences) {
  const Game game = GetParam();
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testing::RandomVector(rng, 8, 1.5);
    for (int player = 0; player < 2; ++player) {
      const auto g = Gradient<8>(
          [&](auto v) {
            const auto payoffs =
                EvaluatePayoffs(game, v.subspan(0, 4), v.subspan(4, 4));
            return player == 0 ? payoffs.a : payoffs.b;
          },
          x);
      const auto fd = FdGradient(
          [&](const std::vector<double>& v) {
            const auto payoffs = ExpectedPayoffs(
                game, {v.begin(), v.begin() + 4}, {v.begin() + 4, v.end()});
            return player == 0 ? payoffs.a : payoffs.b;
          },
          x);
      for (int i = 0; i < 8; ++i) {
        if (std::abs(fd[i]) < 1e-3) {
          EXPECT_LT(std::abs(g[i] - fd[i]), 1e-8);
        } else {
          EXPECT_LT(std::abs(g[i] - fd[i]) / std::abs(fd[i]), 1e-5);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Games, PayoffGradientTest,
                         ::testing::Values(PrisonersDilemma(), Chicken()),
                         [](const auto& info) { return info.param.name; });

TEST(ExpectedPayoffsTest, MonotoneInOpponentCooperation) {
  const Game pd = PrisonersDilemma();
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::RandomVector(rng, 4, 2.0);
    auto b = testing::RandomVector(rng, 4, 2.0);
    const double before = ExpectedPayoffs(pd, a, b).a;
    b[kIndependentParam] += 0.5;
    EXPECT_GE(ExpectedPayoffs(pd, a, b).a, before - 1e-12);
  }
}

}  // namespace
}  // namespace oppshape
