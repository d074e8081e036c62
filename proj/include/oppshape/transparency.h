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

#ifndef OPPSHAPE_TRANSPARENCY_H_
#define OPPSHAPE_TRANSPARENCY_H_

// Action distributions of two players who can each predict how the other
// will act against them. A player predicts with probability p, reacting to
// the predicted opponent action through a column-stochastic matrix M, and
// otherwise plays an opponent-independent distribution v. Requiring
// p <= 1 - epsilon grounds the mutual recursion.

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "oppshape/dual.h"

namespace oppshape {

// Minimum probability of an opponent-independent response.
inline constexpr double kGroundingEpsilon = 1e-3;

template <typename T, std::size_t D>
using Vector = std::array<T, D>;

// Row-major; Matrix<T, D>[i][j].
template <typename T, std::size_t D>
using Matrix = std::array<std::array<T, D>, D>;

template <typename T, std::size_t D = 2>
struct TransparentPolicy {
  T predict;                 // p_P
  Vector<T, D> independent;  // v
  Matrix<T, D> reaction;     // reaction[i][j] = Pr[play i | predicted j]
};

template <typename T, std::size_t D>
Vector<T, D> Multiply(const Matrix<T, D>& m, const Vector<T, D>& x) {
  Vector<T, D> r;
  for (std::size_t i = 0; i < D; ++i) {
    r[i] = m[i][0] * x[0];
    for (std::size_t k = 1; k < D; ++k) r[i] = r[i] + m[i][k] * x[k];
  }
  return r;
}

template <typename T, std::size_t D>
Matrix<T, D> Multiply(const Matrix<T, D>& a, const Matrix<T, D>& b) {
  Matrix<T, D> r;
  for (std::size_t i = 0; i < D; ++i) {
    for (std::size_t j = 0; j < D; ++j) {
      r[i][j] = a[i][0] * b[0][j];
      for (std::size_t k = 1; k < D; ++k) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    }
  }
  return r;
}

// Solves m x = rhs by Gaussian elimination without pivoting. Sufficient for
// the column diagonally dominant systems produced below; no branch depends on
// the scalar values, so derivatives flow through unchanged.
template <typename T, std::size_t D>
Vector<T, D> Solve(Matrix<T, D> m, Vector<T, D> rhs) {
  for (std::size_t k = 0; k < D; ++k) {
    if (std::abs(ValueOf(m[k][k])) < 1e-12) {
      throw std::domain_error("Solve: singular matrix");
    }
    for (std::size_t i = k + 1; i < D; ++i) {
      const T factor = m[i][k] / m[k][k];
      for (std::size_t j = k; j < D; ++j) m[i][j] = m[i][j] - factor * m[k][j];
      rhs[i] = rhs[i] - factor * rhs[k];
    }
  }
  Vector<T, D> x;
  for (int i = static_cast<int>(D) - 1; i >= 0; --i) {
    T acc = rhs[i];
    for (std::size_t j = i + 1; j < D; ++j) acc = acc - m[i][j] * x[j];
    x[i] = acc / m[i][i];
  }
  return x;
}

namespace internal {

// Distribution of `self` against `other`:
// (I - p_s p_o M_s M_o)^-1 ((1 - p_s) v_s + p_s (1 - p_o) M_s v_o).
template <typename T, std::size_t D>
Vector<T, D> ActionDistribution(const TransparentPolicy<T, D>& self,
                                const TransparentPolicy<T, D>& other) {
  const T both = self.predict * other.predict;
  Matrix<T, D> system = Multiply(self.reaction, other.reaction);
  for (std::size_t i = 0; i < D; ++i) {
    for (std::size_t j = 0; j < D; ++j) {
      system[i][j] = (i == j ? 1.0 : 0.0) - both * system[i][j];
    }
  }
  const Vector<T, D> reacted = Multiply(self.reaction, other.independent);
  const T own_weight = 1.0 - self.predict;
  const T react_weight = self.predict * (1.0 - other.predict);
  Vector<T, D> rhs;
  for (std::size_t i = 0; i < D; ++i) {
    rhs[i] = own_weight * self.independent[i] + react_weight * reacted[i];
  }
  return Solve(system, rhs);
}

}  // namespace internal

// Closed-form action distributions (w_A, w_B). The actual actions are drawn
// independently, so the joint outcome distribution is w_A (x) w_B.
template <typename T, std::size_t D>
std::pair<Vector<T, D>, Vector<T, D>> TransparentDistributions(
    const TransparentPolicy<T, D>& a, const TransparentPolicy<T, D>& b) {
  return {internal::ActionDistribution(a, b),
          internal::ActionDistribution(b, a)};
}

// Throws std::invalid_argument unless `policy` is a valid grounded policy.
void ValidatePolicy(const TransparentPolicy<double, 2>& policy,
                    double epsilon = kGroundingEpsilon);

struct SeriesResult {
  Vector<double, 2> w_a;
  Vector<double, 2> w_b;
  long terms = 0;  // number of prediction rounds summed
};

// Sums the alternating prediction series term by term until the geometric
// tail bound (p_A p_B)^k / (1 - p_A p_B) drops below `tol`. Plain reals only.
SeriesResult SeriesDistributions(const TransparentPolicy<double, 2>& a,
                                 const TransparentPolicy<double, 2>& b,
                                 double tol);

}  // namespace oppshape

#endif  // OPPSHAPE_TRANSPARENCY_H_
