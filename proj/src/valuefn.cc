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

namespace oppshape {

Payoffs<double> ExpectedPayoffs(const Game& game, const Params& a,
                                const Params& b) {
  return EvaluatePayoffs<double>(game, a, b);
}

std::array<double, 4> PolicyProbabilities(const Params& theta) {
  const auto policy = ParamsToPolicy<double>(theta);
  return {policy.predict, policy.independent[kCooperate],
          policy.reaction[kCooperate][kCooperate],
          policy.reaction[kCooperate][kDefect]};
}

std::pair<double, double> CooperationProbabilities(const Params& a,
                                                   const Params& b) {
  const auto [w_a, w_b] = TransparentDistributions(ParamsToPolicy<double>(a),
                                                   ParamsToPolicy<double>(b));
  return {w_a[kCooperate], w_b[kCooperate]};
}

std::array<double, 4> OutcomeProbabilities(const Params& a, const Params& b) {
  const auto [w_a, w_b] = TransparentDistributions(ParamsToPolicy<double>(a),
                                                   ParamsToPolicy<double>(b));
  return {w_a[0] * w_b[0], w_a[0] * w_b[1], w_a[1] * w_b[0], w_a[1] * w_b[1]};
}

}  // namespace oppshape
