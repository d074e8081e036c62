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

#ifndef OPPSHAPE_TESTS_LEARNER_ORACLES_H_
#define OPPSHAPE_TESTS_LEARNER_ORACLES_H_

// Finite-difference reference for every learner's update direction. Payoffs
// are evaluated in extended precision so that the four-point mixed difference
// at the standard step stays well below the comparison tolerance. No Dual
// numbers are involved.

#include <span>
#include <vector>

#include "oppshape/games.h"
#include "oppshape/learners.h"
#include "oppshape/valuefn.h"
#include "oracles.h"

namespace oppshape::testing {

using Wide = long double;
using WideVec = std::vector<Wide>;

// Payoff of the player owning `self`.
inline Wide WidePayoff(const Game& game, const WideVec& self,
                       const WideVec& opp, bool second_player) {
  if (second_player) {
    return EvaluatePayoffs<Wide>(game, std::span<const Wide>(opp),
                                 std::span<const Wide>(self))
        .b;
  }
  return EvaluatePayoffs<Wide>(game, std::span<const Wide>(self),
                               std::span<const Wide>(opp))
      .a;
}

template <typename F>
WideVec WideFdGradient(const F& f, const WideVec& x, Wide h) {
  WideVec g(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    WideVec hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    g[i] = (f(hi) - f(lo)) / (2 * h);
  }
  return g;
}

template <typename F>
std::vector<WideVec> WideFdMixed(const F& f, const WideVec& x, const WideVec& y,
                                 Wide h) {
  std::vector<WideVec> m(x.size(), WideVec(y.size()));
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = 0; j < y.size(); ++j) {
      auto at = [&](int si, int sj) {
        WideVec xx = x, yy = y;
        xx[i] += si * h;
        yy[j] += sj * h;
        return f(xx, yy);
      };
      m[i][j] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  }
  return m;
}

// The update direction `spec` would follow from `self` against `opp`.
inline std::vector<double> FdLearnerGradient(
    const LearnerSpec& spec, const Game& game, const Params& self_d,
    const Params& opp_d, bool second_player, double step = kFdStep) {
  const Wide h = step;
  const WideVec self(self_d.begin(), self_d.end());
  const WideVec opp(opp_d.begin(), opp_d.end());
  auto v_self = [&](const WideVec& x, const WideVec& y) {
    return WidePayoff(game, x, y, second_player);
  };
  auto v_opp = [&](const WideVec& x, const WideVec& y) {
    return WidePayoff(game, y, x, !second_player);
  };
  auto grad_y = [&](const WideVec& x, const auto& v) {
    return WideFdGradient([&](const WideVec& y) { return v(x, y); }, opp, h);
  };
  const Wide eta = spec.opp_lr;
  const WideVec naive =
      WideFdGradient([&](const WideVec& x) { return v_self(x, opp); }, self, h);

  WideVec out = naive;
  if (spec.kind == LearnerKind::kLolaExact) {
    out = WideFdGradient(
        [&](const WideVec& x) {
          const WideVec step_y = grad_y(x, v_opp);
          WideVec y = opp;
          for (size_t j = 0; j < y.size(); ++j) y[j] += eta * step_y[j];
          return v_self(x, y);
        },
        self, h);
  } else if (spec.kind != LearnerKind::kNaive) {
    const WideVec opp_grad_of_opp = grad_y(self, v_opp);
    const WideVec opp_grad_of_self = grad_y(self, v_self);
    const auto mixed_self = WideFdMixed(v_self, self, opp, h);
    const auto mixed_opp = WideFdMixed(v_opp, self, opp, h);
    WideVec shape(self.size(), 0);
    for (size_t i = 0; i < self.size(); ++i) {
      for (size_t j = 0; j < opp.size(); ++j) {
        out[i] += eta * mixed_self[i][j] * opp_grad_of_opp[j];
        shape[i] += eta * mixed_opp[i][j] * opp_grad_of_self[j];
      }
    }
    if (spec.kind != LearnerKind::kLookAhead) {
      Wide p = 1;
      if (spec.kind == LearnerKind::kSos) {
        const std::vector<double> n(naive.begin(), naive.end());
        const std::vector<double> la(out.begin(), out.end());
        const std::vector<double> s(shape.begin(), shape.end());
        p = SosScaling(n, la, s, spec.sos_a, spec.sos_b);
      }
      for (size_t i = 0; i < out.size(); ++i) out[i] += p * shape[i];
    }
  }
  return std::vector<double>(out.begin(), out.end());
}

}  // namespace oppshape::testing

#endif  // OPPSHAPE_TESTS_LEARNER_ORACLES_H_
