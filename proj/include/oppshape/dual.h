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

#ifndef OPPSHAPE_DUAL_H_
#define OPPSHAPE_DUAL_H_

// Forward-mode differentiation with exact first and second derivatives.
//
// Dual<T, N> carries a value of type T together with N partial derivatives,
// also of type T. Nesting the type, Dual<Dual<double, N>, N>, yields exact
// second derivatives. Because each differentiation level is a distinct type,
// gradients can be taken of functions that themselves compute gradients
// without perturbation confusion:
//
//   auto cube = [](auto x) { return x[0] * x[0] * x[0]; };
//   auto slope = [&](auto x) { return Gradient<1>(cube, x)[0]; };
//   Gradient<1>(slope, std::vector<double>{2.0});  // {12.0}, the curvature
//
// Functions passed to Gradient must be generic over the scalar type: they
// receive a std::span<const Dual<S, N>> and return a single Dual<S, N>.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace oppshape {

// Largest number of simultaneously differentiated inputs.
inline constexpr int kMaxDiffVariables = 16;

inline double ValueOf(double x) { return x; }
inline double Exp(double x) { return std::exp(x); }

inline double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// min(x, bound)
inline double ClampMax(double x, double bound) { return x > bound ? bound : x; }

inline double Logit(double p) { return std::log(p / (1.0 - p)); }

template <typename T, int N>
class Dual;

template <typename T, int N>
double ValueOf(const Dual<T, N>& x);

template <typename T, int N>
class Dual {
  static_assert(N >= 1 && N <= kMaxDiffVariables);

 public:
  using Scalar = T;
  static constexpr int kSize = N;

  constexpr Dual() = default;
  constexpr Dual(const T& value) : value_(value) {}  // NOLINT: constants
  template <typename U>
    requires(std::is_arithmetic_v<U> && !std::is_same_v<T, double>)
  constexpr Dual(U value) : value_(static_cast<double>(value)) {}  // NOLINT
  constexpr Dual(const T& value, const std::array<T, N>& partials)
      : value_(value), partials_(partials) {}

  // Independent variable number `index`.
  static Dual Variable(const T& value, int index) {
    Dual x(value);
    x.partials_[index] = T(1.0);
    return x;
  }

  const T& value() const { return value_; }
  const T& d(int i) const { return partials_[i]; }
  const std::array<T, N>& partials() const { return partials_; }

  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator-=(const Dual& b) { return *this = *this - b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
  Dual& operator/=(const Dual& b) { return *this = *this / b; }

  friend Dual operator-(const Dual& a) {
    Dual r(-a.value_);
    for (int i = 0; i < N; ++i) r.partials_[i] = -a.partials_[i];
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.value_ + b.value_);
    for (int i = 0; i < N; ++i)
      r.partials_[i] = a.partials_[i] + b.partials_[i];
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.value_ - b.value_);
    for (int i = 0; i < N; ++i)
      r.partials_[i] = a.partials_[i] - b.partials_[i];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.value_ * b.value_);
    for (int i = 0; i < N; ++i) {
      r.partials_[i] = a.partials_[i] * b.value_ + a.value_ * b.partials_[i];
    }
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    if (ValueOf(b) == 0.0) throw std::domain_error("Dual: division by zero");
    Dual r(a.value_ / b.value_);
    for (int i = 0; i < N; ++i) {
      r.partials_[i] = (a.partials_[i] - r.value_ * b.partials_[i]) / b.value_;
    }
    return r;
  }

  // Mixed operations with plain reals skip the zero partials of a constant.
  friend Dual operator+(const Dual& a, double b) {
    Dual r(a);
    r.value_ = a.value_ + b;
    return r;
  }
  friend Dual operator+(double a, const Dual& b) { return b + a; }
  friend Dual operator-(const Dual& a, double b) { return a + (-b); }
  friend Dual operator-(double a, const Dual& b) { return (-b) + a; }
  friend Dual operator*(const Dual& a, double b) {
    Dual r(a.value_ * b);
    for (int i = 0; i < N; ++i) r.partials_[i] = a.partials_[i] * b;
    return r;
  }
  friend Dual operator*(double a, const Dual& b) { return b * a; }
  friend Dual operator/(const Dual& a, double b) {
    if (b == 0.0) throw std::domain_error("Dual: division by zero");
    return a * (1.0 / b);
  }
  friend Dual operator/(double a, const Dual& b) { return Dual(T(a)) / b; }

  friend Dual Exp(const Dual& a) {
    const T e = Exp(a.value_);
    Dual r(e);
    for (int i = 0; i < N; ++i) r.partials_[i] = e * a.partials_[i];
    return r;
  }

  friend Dual Sigmoid(const Dual& a) {
    const T s = Sigmoid(a.value_);
    const T slope = s * (1.0 - s);
    Dual r(s);
    for (int i = 0; i < N; ++i) r.partials_[i] = slope * a.partials_[i];
    return r;
  }

  // min(a, bound): the clamped branch is a constant with zero derivatives.
  friend Dual ClampMax(const Dual& a, double bound) {
    return ValueOf(a) > bound ? Dual(T(bound)) : a;
  }

 private:
  T value_{};
  std::array<T, N> partials_{};
};

template <typename T, int N>
double ValueOf(const Dual<T, N>& x) {
  return ValueOf(x.value());
}

// Gradient of `f` at `at`. S is the scalar type of the evaluation point;
// it is itself a Dual when this call is nested inside another Gradient.
template <int N, typename S, typename F>
std::vector<S> Gradient(F&& f, std::span<const S> at) {
  if (static_cast<int>(at.size()) > N) {
    throw std::invalid_argument("Gradient: more inputs than capacity N");
  }
  const int n = static_cast<int>(at.size());
  std::array<Dual<S, N>, N> x{};
  for (int i = 0; i < n; ++i) x[i] = Dual<S, N>::Variable(at[i], i);
  const Dual<S, N> y = f(std::span<const Dual<S, N>>(x.data(), n));
  return std::vector<S>(y.partials().begin(), y.partials().begin() + n);
}

template <int N, typename S, typename F>
std::vector<S> Gradient(F&& f, const std::vector<S>& at) {
  return Gradient<N>(std::forward<F>(f), std::span<const S>(at));
}

// A scalar with exact value, gradient and Hessian over N inputs.
template <int N>
using SecondOrder = Dual<Dual<double, N>, N>;

// Seeds `values` as independent variables of a SecondOrder scalar:
// d x_i / d x_j = delta_ij, all second derivatives zero.
template <int N>
std::vector<SecondOrder<N>> SeedVariables(std::span<const double> values) {
  if (static_cast<int>(values.size()) > N) {
    throw std::invalid_argument("SeedVariables: more inputs than capacity N");
  }
  std::vector<SecondOrder<N>> vars;
  vars.reserve(values.size());
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("SeedVariables: non-finite input");
    }
    vars.push_back(
        SecondOrder<N>::Variable(Dual<double, N>::Variable(values[i], i), i));
  }
  return vars;
}

template <int N>
double Partial(const SecondOrder<N>& f, int i) {
  return f.d(i).value();
}

template <int N>
double Partial2(const SecondOrder<N>& f, int i, int j) {
  return f.d(i).d(j);
}

}  // namespace oppshape

#endif  // OPPSHAPE_DUAL_H_
