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

#include "oppshape/dual.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace oppshape {
namespace {

using testing::FdGradient;

TEST(SeedVariablesTest, IdentitySeeding) {
  const std::vector<double> at = {0.0};
  const auto x = SeedVariables<1>(at);
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(ValueOf(x[0]), 0.0);
  EXPECT_EQ(Partial(x[0], 0), 1.0);
  EXPECT_EQ(Partial2(x[0], 0, 0), 0.0);
}

TEST(SeedVariablesTest, BilinearSecondPartial) {
  const std::vector<double> at = {2.0, 3.0};
  const auto x = SeedVariables<2>(at);
  const auto f = x[0] * x[1];
  EXPECT_EQ(Partial(f, 0), 3.0);
  EXPECT_EQ(Partial(f, 1), 2.0);
  EXPECT_EQ(Partial2(f, 0, 1), 1.0);
  EXPECT_EQ(Partial2(f, 1, 0), 1.0);
  EXPECT_EQ(Partial2(f, 0, 0), 0.0);
}

TEST(SeedVariablesTest, RejectsNonFinite) {
  const std::vector<double> at = {1.0, std::nan("")};
  EXPECT_THROW(SeedVariables<2>(at), std::invalid_argument);
  const std::vector<double> inf = {INFINITY};
  EXPECT_THROW(SeedVariables<1>(inf), std::invalid_argument);
}

TEST(SeedVariablesTest, CapacityIsSixteen) {
  const std::vector<double> sixteen(16, 0.5);
  auto x = SeedVariables<16>(sixteen);
  SecondOrder<16> sum = x[0];
  for (int i = 1; i < 16; ++i) sum = sum + x[i] * x[i];
  EXPECT_DOUBLE_EQ(Partial(sum, 15), 1.0);
  EXPECT_DOUBLE_EQ(Partial2(sum, 15, 15), 2.0);
  const std::vector<double> seventeen(17, 0.5);
  EXPECT_THROW(SeedVariables<16>(seventeen), std::invalid_argument);
}

TEST(ElementaryOpsTest, ConstantHasZeroDerivatives) {
  const SecondOrder<3> c(2.5);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(Partial(c, i), 0.0);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(Partial2(c, i, j), 0.0);
  }
}

TEST(ElementaryOpsTest, SigmoidAtZero) {
  const std::vector<double> at = {0.0};
  const auto s = Sigmoid(SeedVariables<1>(at)[0]);
  EXPECT_DOUBLE_EQ(ValueOf(s), 0.5);
  EXPECT_DOUBLE_EQ(Partial(s, 0), 0.25);
  EXPECT_NEAR(Partial2(s, 0, 0), 0.0, 1e-15);
}

TEST(ElementaryOpsTest, SigmoidMatchesFiniteDifferences) {
  const std::vector<double> at = {0.5};
  const auto s = Sigmoid(SeedVariables<1>(at)[0]);
  const auto fd = FdGradient([](const auto& x) { return Sigmoid(x[0]); }, at);
  const double sig = Sigmoid(0.5);
  EXPECT_NEAR(Partial(s, 0), sig * (1.0 - sig), 1e-15);
  EXPECT_NEAR(Partial(s, 0), 0.2350, 1e-4);
  EXPECT_NEAR(Partial(s, 0), fd[0], 1e-9);
}

TEST(ElementaryOpsTest, SigmoidIsStableForLargeInputs) {
  EXPECT_DOUBLE_EQ(Sigmoid(-800.0), 0.0);
  EXPECT_DOUBLE_EQ(Sigmoid(800.0), 1.0);
}

TEST(ElementaryOpsTest, ClampedBranchHasZeroDerivative) {
  const std::vector<double> at = {10.0};
  const auto clamped = ClampMax(Sigmoid(SeedVariables<1>(at)[0]), 0.999);
  EXPECT_GT(Sigmoid(10.0), 0.9999);
  EXPECT_EQ(ValueOf(clamped), 0.999);
  EXPECT_EQ(Partial(clamped, 0), 0.0);
  EXPECT_EQ(Partial2(clamped, 0, 0), 0.0);
}

TEST(ElementaryOpsTest, PassThroughBranchKeepsDerivative) {
  const std::vector<double> at = {0.3};
  const auto x = SeedVariables<1>(at)[0];
  const auto y = ClampMax(x, 0.999);
  EXPECT_EQ(ValueOf(y), 0.3);
  EXPECT_EQ(Partial(y, 0), 1.0);
}

TEST(ElementaryOpsTest, ExpProductIdentity) {
  const std::vector<double> at = {1.0};
  const auto x = SeedVariables<1>(at)[0];
  const auto lhs = Exp(x) * Exp(x);
  const auto rhs = Exp(2.0 * x);
  EXPECT_NEAR(ValueOf(lhs), ValueOf(rhs), 1e-12);
  EXPECT_NEAR(Partial(lhs, 0), Partial(rhs, 0), 1e-12);
  EXPECT_NEAR(Partial2(lhs, 0, 0), Partial2(rhs, 0, 0), 1e-12);
}

TEST(ElementaryOpsTest, DivisionByZeroThrows) {
  const std::vector<double> at = {0.0, 1.0};
  const auto x = SeedVariables<2>(at);
  EXPECT_THROW(x[1] / x[0], std::domain_error);
  EXPECT_THROW(x[1] / 0.0, std::domain_error);
  EXPECT_THROW(1.0 / x[0], std::domain_error);
}

TEST(ElementaryOpsTest, QuotientRule) {
  const std::vector<double> at = {3.0, 2.0};
  const auto x = SeedVariables<2>(at);
  const auto q = x[0] / x[1];
  EXPECT_DOUBLE_EQ(ValueOf(q), 1.5);
  EXPECT_DOUBLE_EQ(Partial(q, 0), 0.5);
  EXPECT_DOUBLE_EQ(Partial(q, 1), -0.75);
  EXPECT_DOUBLE_EQ(Partial2(q, 0, 1), -0.25);
  EXPECT_DOUBLE_EQ(Partial2(q, 1, 1), 0.75);  // 2 x / y^3
}

TEST(GradientTest, Quadratic) {
  const auto g = Gradient<2>([](auto x) { return x[0] * x[0] + x[1] * x[1]; },
                             std::vector<double>{1.0, 2.0});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g[0], 2.0);
  EXPECT_DOUBLE_EQ(g[1], 4.0);
}

TEST(GradientTest, TandemPayoffAtOrigin) {
  // V_A = -(x+y)^2 + 2x
  const auto g = Gradient<2>(
      [](auto v) {
        const auto s = v[0] + v[1];
        return -(s * s) + 2.0 * v[0];
      },
      std::vector<double>{0.0, 0.0});
  EXPECT_DOUBLE_EQ(g[0], 2.0);
  EXPECT_DOUBLE_EQ(g[1], 0.0);
}

TEST(GradientTest, TooManyInputsThrows) {
  EXPECT_THROW(
      Gradient<1>([](auto x) { return x[0]; }, std::vector<double>{1.0, 2.0}),
      std::invalid_argument);
}

TEST(NestedGradientTest, DerivativeOfDerivative) {
  auto cube = [](auto x) { return x[0] * x[0] * x[0]; };
  auto slope = [&](auto x) { return Gradient<1>(cube, x)[0]; };
  // Evaluating the nested function at plain doubles gives g'(2) = 12.
  const std::vector<double> at = {2.0};
  EXPECT_DOUBLE_EQ(slope(std::span<const double>(at)), 12.0);
  // Differentiating it gives g''(2) = 12.
  EXPECT_DOUBLE_EQ(Gradient<1>(slope, at)[0], 12.0);
}

TEST(NestedGradientTest, TwoVariableInnerGradient) {
  // f(x) = d/dy [x0 * y^2 + x1 * y] at y = x0 + x1, i.e. 2 x0 y + x1.
  auto f = [](auto x) {
    using S = typename decltype(x)::value_type;
    const std::vector<S> y0 = {x[0] + x[1]};
    const S x0 = x[0];
    const S x1 = x[1];
    return Gradient<1>([&](auto y) { return x0 * y[0] * y[0] + x1 * y[0]; },
                       y0)[0];
  };
  const std::vector<double> at = {1.5, -0.5};
  const auto g = Gradient<2>(f, at);
  // f = 2 x0 (x0 + x1) + x1: df/dx0 = 4 x0 + 2 x1, df/dx1 = 2 x0 + 1.
  EXPECT_DOUBLE_EQ(g[0], 4.0 * 1.5 + 2.0 * -0.5);
  EXPECT_DOUBLE_EQ(g[1], 2.0 * 1.5 + 1.0);
}

// A composite exercising every elementary operation.
template <typename T>
T Composite(std::span<const T> x) {
  const T s = Sigmoid(x[0] * x[1] - x[2]);
  const T q = (x[0] + 2.0) / (1.5 + Exp(-x[1] * x[1]));
  return ClampMax(s, 0.9) * q - x[2] * Exp(0.3 * x[0]) + s / (2.0 + s);
}

TEST(DualPropertyTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testing::RandomVector(rng, 3, 1.0);
    const auto g = Gradient<3>([](auto v) { return Composite(v); }, x);
    const auto fd = FdGradient(
        [](const std::vector<double>& v) {
          return Composite<double>(std::span<const double>(v));
        },
        x);
    for (int i = 0; i < 3; ++i) {
      if (std::abs(fd[i]) < 1e-3) {
        EXPECT_LT(std::abs(g[i] - fd[i]), 1e-8);
      } else {
        EXPECT_LT(std::abs(g[i] - fd[i]) / std::abs(fd[i]), 1e-5);
      }
    }
  }
}

TEST(DualPropertyTest, SecondPartialsAreSymmetric) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testing::RandomVector(rng, 3, 1.0);
    const auto vars = SeedVariables<3>(x);
    const auto f = Composite<SecondOrder<3>>(vars);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(Partial2(f, i, j), Partial2(f, j, i), 1e-10);
      }
    }
  }
}

TEST(DualPropertyTest, HessianMatchesDifferencedGradients) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testing::RandomVector(rng, 3, 1.0);
    const auto f = Composite<SecondOrder<3>>(SeedVariables<3>(x));
    for (int j = 0; j < 3; ++j) {
      const auto row = FdGradient(
          [j](const std::vector<double>& v) {
            return Gradient<3>([](auto u) { return Composite(u); }, v)[j];
          },
          x);
      for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(Partial2(f, j, i), row[i],
                    1e-5 * std::max(1.0, std::abs(row[i])));
      }
    }
  }
}

TEST(DualPropertyTest, GradientIsLinear) {
  std::mt19937_64 rng(14);
  auto g = [](auto x) { return Exp(x[0]) * x[1] - Sigmoid(x[2]); };
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testing::RandomVector(rng, 3, 1.0);
    const double alpha = 1.7;
    const double beta = -0.4;
    const auto combined = Gradient<3>(
        [&](auto v) { return alpha * Composite(v) + beta * g(v); }, x);
    const auto gf = Gradient<3>([](auto v) { return Composite(v); }, x);
    const auto gg = Gradient<3>(g, x);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(combined[i], alpha * gf[i] + beta * gg[i], 1e-10);
    }
  }
}

}  // namespace
}  // namespace oppshape
