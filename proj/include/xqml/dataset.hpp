// Copyright 2026 The xqml authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xqml/linalg.hpp"

namespace xqml::dataset {

inline constexpr int kDim = 6;
inline constexpr int kNumClasses = 4;

/// Synthetic 4-class benchmark over R^6. Three class-specific main
/// dimensions are Gaussian around (1/2, 1/2, 0); the remaining three are
/// uniform on [-m, m].
struct DatasetConfig {
  int samples_per_class = 1000;
  double m = 0.5;  // uniform half-width, one of {0.1, 0.5, pi} in the benchmark
  std::array<double, 3> mu{0.5, 0.5, 0.0};
  double sigma = 0.2 / std::numbers::sqrt2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Sample {
  Vector x;
  int label = 0;
};

/// Binary ground-truth relevance: exactly the three main dimensions.
struct Mask {
  std::array<int, kDim> values{};

  int ones() const;
};

/// Main dimensions per class, ascending.
const std::array<int, 3>& main_dimensions(int label);

Mask ground_truth_mask(int label);

/// Draws samples_per_class points per class, ordered class 0 first. Each
/// class uses its own RNG substream derived from (seed, class), so the
/// output is byte-stable for a fixed seed.
std::vector<Sample> generate(const DatasetConfig& config);

struct Split {
  std::vector<Sample> train;
  std::vector<Sample> test;
};

/// Stratified 80/20 split with a dedicated shuffle seed.
Split split_train_test(const std::vector<Sample>& samples, std::uint64_t split_seed);

}  // namespace xqml::dataset
