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

#include "xqml/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "xqml/random.hpp"

namespace xqml::dataset {

namespace {

constexpr std::array<std::array<int, 3>, kNumClasses> kMainDims{{
    {0, 1, 2},
    {3, 4, 5},
    {0, 2, 4},
    {1, 3, 5},
}};

}  // namespace

void DatasetConfig::validate() const {
  if (samples_per_class <= 0)
    throw std::invalid_argument("dataset: samples_per_class must be positive");
  if (!(m > 0.0)) throw std::invalid_argument("dataset: m must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("dataset: sigma must be positive");
}

int Mask::ones() const {
  int n = 0;
  for (int v : values) n += v;
  return n;
}

const std::array<int, 3>& main_dimensions(int label) {
  if (label < 0 || label >= kNumClasses)
    throw std::invalid_argument("dataset: class out of range");
  return kMainDims[label];
}

Mask ground_truth_mask(int label) {
  Mask mask;
  for (int j : main_dimensions(label)) mask.values[j] = 1;
  return mask;
}

std::vector<Sample> generate(const DatasetConfig& config) {
  config.validate();
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(config.samples_per_class) * kNumClasses);

  for (int c = 0; c < kNumClasses; ++c) {
    auto rng = substream(config.seed, static_cast<std::uint64_t>(c));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(-config.m, config.m);
    const auto& mains = main_dimensions(c);
    for (int s = 0; s < config.samples_per_class; ++s) {
      Vector x(kDim);
      // Main dimensions first (mu maps onto them in ascending index order),
      // then the remaining ones, so the draw order is well defined.
      std::array<double, 3> main_values;
      for (int j = 0; j < 3; ++j) main_values[j] = config.mu[j] + config.sigma * gauss(rng);
      std::array<bool, kDim> is_main{};
      for (int j = 0; j < 3; ++j) is_main[mains[j]] = true;
      int next_main = 0;
      for (int dim = 0; dim < kDim; ++dim) {
        if (is_main[dim])
          x[dim] = main_values[next_main++];
        else
          x[dim] = uniform(rng);
      }
      samples.push_back(Sample{std::move(x), c});
    }
  }
  return samples;
}

Split split_train_test(const std::vector<Sample>& samples, std::uint64_t split_seed) {
  Split out;
  for (int c = 0; c < kNumClasses; ++c) {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (samples[i].label == c) indices.push_back(i);
    auto rng = substream(split_seed, static_cast<std::uint64_t>(c));
    std::shuffle(indices.begin(), indices.end(), rng);
    const std::size_t train_count = indices.size() * 8 / 10;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      (i < train_count ? out.train : out.test).push_back(samples[indices[i]]);
    }
  }
  return out;
}

}  // namespace xqml::dataset
