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

#ifndef OPPSHAPE_RANDOM_H_
#define OPPSHAPE_RANDOM_H_

// Platform-independent seeding and normal sampling. The standard library's
// distributions are implementation-defined, so samples are drawn from the raw
// mt19937_64 stream with Box-Muller.

#include <cstdint>
#include <random>

namespace oppshape {

// splitmix64 finalizer.
std::uint64_t MixBits(std::uint64_t x);

// Seed of the `index`-th independent stream derived from `seed`.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();

  // Draw from N(mean, sigma^2).
  double Normal(double mean, double sigma);

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace oppshape

#endif  // OPPSHAPE_RANDOM_H_
