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

#include "oppshape/transparency.h"

#include <string>

namespace oppshape {
namespace {

void CheckDistribution(const Vector<double, 2>& p, const std::string& what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument(what + ": negative entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument(what + ": does not sum to one");
  }
}

// One player's side of the series. Term k of the sum is
//   r^k [(1 - p_s) (M_s M_o)^k v_s + p_s (1 - p_o) (M_s M_o)^k M_s v_o].
Vector<double, 2> SeriesSide(const TransparentPolicy<double, 2>& self,
                             const TransparentPolicy<double, 2>& other,
                             double tol, long* terms) {
  const double ratio = self.predict * other.predict;
  const auto cycle = Multiply(self.reaction, other.reaction);
  Vector<double, 2> own = self.independent;
  Vector<double, 2> reacted = Multiply(self.reaction, other.independent);
  const double own_weight = 1.0 - self.predict;
  const double react_weight = self.predict * (1.0 - other.predict);

  Vector<double, 2> w = {0.0, 0.0};
  double scale = 1.0;  // r^k
  long k = 0;
  while (true) {
    for (int i = 0; i < 2; ++i) {
      w[i] += scale * (own_weight * own[i] + react_weight * reacted[i]);
    }
    ++k;
    scale *= ratio;
    if (scale / (1.0 - ratio) < tol) break;
    own = Multiply(cycle, own);
    reacted = Multiply(cycle, reacted);
  }
  *terms = k;
  return w;
}

}  // namespace

void ValidatePolicy(const TransparentPolicy<double, 2>& policy,
                    double epsilon) {
  if (!(policy.predict >= 0.0 && policy.predict <= 1.0 - epsilon)) {
    throw std::invalid_argument(
        "policy: prediction probability outside [0, 1-eps]");
  }
  CheckDistribution(policy.independent, "policy: independent distribution");
  for (int j = 0; j < 2; ++j) {
    CheckDistribution({policy.reaction[0][j], policy.reaction[1][j]},
                      "policy: reaction column");
  }
}

SeriesResult SeriesDistributions(const TransparentPolicy<double, 2>& a,
                                 const TransparentPolicy<double, 2>& b,
                                 double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("series: tol must be positive");
  SeriesResult result;
  long terms_b = 0;
  result.w_a = SeriesSide(a, b, tol, &result.terms);
  result.w_b = SeriesSide(b, a, tol, &terms_b);
  return result;
}

}  // namespace oppshape
