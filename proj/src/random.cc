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

#include "oppshape/random.h"

#include <cmath>
#include <numbers>

namespace oppshape {

std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  return MixBits(MixBits(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

double NormalSampler::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalSampler::Normal(double mean, double sigma) {
  if (has_cached_) {
    has_cached_ = false;
    return mean + sigma * cached_;
  }
  // 1 - Uniform() lies in (0, 1], keeping the logarithm finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - Uniform()));
  const double angle = 2.0 * std::numbers::pi * Uniform();
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return mean + sigma * radius * std::cos(angle);
}

}  // namespace oppshape
