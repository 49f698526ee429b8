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

#include <cstdint>
#include <span>
#include <vector>

#include "xqml/dataset.hpp"
#include "xqml/qcore.hpp"

namespace xqml::training {

struct TrainConfig {
  double learning_rate = 1.0;
  int epochs = 200;
  int layers = 5;
  int batch_size = 1000;
  double eps_stab = 1e-10;  // stabilizer inside log(softmax + eps)
  std::uint64_t seed = 0;

  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  void validate() const;
};

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
};

struct TrainedModel {
  qcore::CircuitSpec spec;
  qcore::ParamVector theta;
  std::vector<EpochStats> history;
};

double softmax_cross_entropy(const Vector& scores, int label, double eps_stab = 1e-10);
Vector softmax(const Vector& scores);

/// Gradient of the mean cross-entropy of a batch with respect to all rotation
/// angles, via the exact +-pi/2 shift rule. The batch collapses into one
/// loss-weighted state per class before the parameter sweep, so the cost is
/// independent of the batch size once the states are encoded.
Vector parameter_gradient(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                          std::span<const dataset::Sample> batch, double eps_stab = 1e-10);

double batch_loss(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                  std::span<const dataset::Sample> batch, double eps_stab = 1e-10);

/// Fraction of argmax-correct predictions; ties resolve to the lowest class
/// index. Throws on an empty sample set.
double accuracy(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                std::span<const dataset::Sample> samples);

/// Adam with cosine learning-rate decay to zero over the total step count.
struct AdamState {
  Vector m;
  Vector v;
  int step = 0;

  explicit AdamState(Eigen::Index n) : m(Vector::Zero(n)), v(Vector::Zero(n)) {}
  void update(Vector& params, const Vector& grad, double lr, const TrainConfig& cfg);
};

double cosine_decay(double base_lr, int step, int total_steps);

/// Full training run on the 6-qubit classifier; deterministic given the
/// config seed. Aborts with a diagnostic if the loss stops being finite.
TrainedModel train(const std::vector<dataset::Sample>& train_set,
                   const std::vector<dataset::Sample>& test_set, const TrainConfig& config);

}  // namespace xqml::training
