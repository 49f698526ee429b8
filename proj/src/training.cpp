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

#include "xqml/training.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "xqml/parallel.hpp"
#include "xqml/random.hpp"

namespace xqml::training {

namespace {

qcore::CircuitSpec benchmark_spec(int layers) {
  return qcore::CircuitSpec(dataset::kDim, layers, {0, 1, 2, 3});
}

struct BatchSummary {
  double loss = 0.0;
  // Loss-gradient-weighted mean state per class; Hermitian because the
  // weights are real.
  std::vector<ComplexMatrix> weighted_states;
};

// d(loss)/d(score_c) for one sample with the +eps stabilizer inside the log.
Vector score_gradient(const Vector& scores, int label, double eps_stab) {
  const Vector p = softmax(scores);
  const double pt = p[label];
  Vector g(p.size());
  for (Eigen::Index c = 0; c < p.size(); ++c) {
    const double delta = (c == label) ? 1.0 : 0.0;
    g[c] = (pt / (pt + eps_stab)) * (p[c] - delta);
  }
  return g;
}

BatchSummary summarize_batch(const qcore::CircuitSpec& spec,
                             const std::vector<qcore::Observable>& observables,
                             std::span<const dataset::Sample> batch, double eps_stab) {
  const Eigen::Index dim = Eigen::Index(1) << spec.num_qubits;
  const int classes = spec.num_classes();
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  struct Acc {
    double loss = 0.0;
    std::vector<ComplexMatrix> states;
  };
  Acc init;
  init.states.assign(classes, ComplexMatrix::Zero(dim, dim));

  Acc total = chunked_reduce<Acc>(
      batch.size(), init,
      [&](std::size_t lo, std::size_t hi) {
        Acc acc;
        acc.states.assign(classes, ComplexMatrix::Zero(dim, dim));
        for (std::size_t i = lo; i < hi; ++i) {
          const auto& sample = batch[i];
          const qcore::DensityMatrix rho = qcore::encode_state(sample.x);
          Vector scores(classes);
          for (int c = 0; c < classes; ++c)
            scores[c] = trace_product(rho.mat, observables[c].mat).real();
          acc.loss += softmax_cross_entropy(scores, sample.label, eps_stab);
          const Vector w = score_gradient(scores, sample.label, eps_stab);
          for (int c = 0; c < classes; ++c) acc.states[c] += (w[c] * inv_b) * rho.mat;
        }
        return acc;
      },
      [&](Acc a, const Acc& b) {
        a.loss += b.loss;
        for (int c = 0; c < classes; ++c) a.states[c] += b.states[c];
        return a;
      });

  total.loss *= inv_b;
  return BatchSummary{total.loss, std::move(total.states)};
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be positive");
  if (epochs <= 0) throw std::invalid_argument("train: epochs must be positive");
  if (layers <= 0) throw std::invalid_argument("train: layers must be positive");
  if (batch_size <= 0) throw std::invalid_argument("train: batch size must be positive");
  if (!(eps_stab > 0.0)) throw std::invalid_argument("train: eps_stab must be positive");
}

Vector softmax(const Vector& scores) {
  const double peak = scores.maxCoeff();
  Vector e = (scores.array() - peak).exp();
  return e / e.sum();
}

double softmax_cross_entropy(const Vector& scores, int label, double eps_stab) {
  if (label < 0 || label >= scores.size())
    throw std::invalid_argument("cross_entropy: label out of range");
  const Vector p = softmax(scores);
  return -std::log(p[label] + eps_stab);
}

double batch_loss(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                  std::span<const dataset::Sample> batch, double eps_stab) {
  if (batch.empty()) throw std::invalid_argument("batch_loss: empty batch");
  std::vector<qcore::Observable> observables;
  for (int c = 0; c < spec.num_classes(); ++c)
    observables.push_back(qcore::heisenberg_observable(spec, theta, c));
  double loss = 0.0;
  for (const auto& sample : batch) {
    const qcore::DensityMatrix rho = qcore::encode_state(sample.x);
    Vector scores(spec.num_classes());
    for (int c = 0; c < spec.num_classes(); ++c)
      scores[c] = trace_product(rho.mat, observables[c].mat).real();
    loss += softmax_cross_entropy(scores, sample.label, eps_stab);
  }
  return loss / static_cast<double>(batch.size());
}

namespace {

// Parameter sweep of the collapsed batch states through +-pi/2-shifted
// circuits.
Vector sweep_gradient(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                      const BatchSummary& summary) {
  const int classes = spec.num_classes();
  std::vector<Eigen::VectorXd> z_diags;
  for (int c = 0; c < classes; ++c) z_diags.push_back(qcore::z_diagonal(spec, c));

  const int params = spec.param_count();
  Vector grad(params);
  std::vector<double> shifted_value(static_cast<std::size_t>(params) * 2);
  parallel_for(shifted_value.size(), [&](std::size_t task) {
    const int m = static_cast<int>(task / 2);
    const double sign = (task % 2 == 0) ? 1.0 : -1.0;
    qcore::ParamVector shifted = theta;
    shifted.values[m] += sign * kPi / 2.0;
    const ComplexMatrix v = qcore::variational_unitary(spec, shifted);
    double val = 0.0;
    for (int c = 0; c < classes; ++c) {
      const ComplexMatrix evolved = v.adjoint() * (z_diags[c].cast<Complex>().asDiagonal() * v);
      val += trace_product(summary.weighted_states[c], evolved).real();
    }
    shifted_value[task] = val;
  });
  for (int m = 0; m < params; ++m)
    grad[m] = (shifted_value[2 * m] - shifted_value[2 * m + 1]) / 2.0;
  return grad;
}

}  // namespace

Vector parameter_gradient(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                          std::span<const dataset::Sample> batch, double eps_stab) {
  if (batch.empty()) throw std::invalid_argument("parameter_gradient: empty batch");
  std::vector<qcore::Observable> observables;
  for (int c = 0; c < spec.num_classes(); ++c)
    observables.push_back(qcore::heisenberg_observable(spec, theta, c));
  const BatchSummary summary = summarize_batch(spec, observables, batch, eps_stab);
  return sweep_gradient(spec, theta, summary);
}

double accuracy(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                std::span<const dataset::Sample> samples) {
  if (samples.empty()) throw std::invalid_argument("accuracy: empty sample set");
  std::vector<qcore::Observable> observables;
  for (int c = 0; c < spec.num_classes(); ++c)
    observables.push_back(qcore::heisenberg_observable(spec, theta, c));

  std::size_t correct = chunked_reduce<std::size_t>(
      samples.size(), 0,
      [&](std::size_t lo, std::size_t hi) {
        std::size_t hits = 0;
        for (std::size_t i = lo; i < hi; ++i) {
          const qcore::DensityMatrix rho = qcore::encode_state(samples[i].x);
          int best = 0;
          double best_score = trace_product(rho.mat, observables[0].mat).real();
          for (int c = 1; c < spec.num_classes(); ++c) {
            const double s = trace_product(rho.mat, observables[c].mat).real();
            if (s > best_score) {
              best_score = s;
              best = c;
            }
          }
          if (best == samples[i].label) ++hits;
        }
        return hits;
      },
      [](std::size_t a, std::size_t b) { return a + b; });
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

double cosine_decay(double base_lr, int step, int total_steps) {
  if (total_steps <= 0) return base_lr;
  const double t = static_cast<double>(step) / static_cast<double>(total_steps);
  return base_lr * 0.5 * (1.0 + std::cos(kPi * t));
}

void AdamState::update(Vector& params, const Vector& grad, double lr, const TrainConfig& cfg) {
  ++step;
  m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * grad;
  v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * grad.cwiseProduct(grad);
  const double m_corr = 1.0 - std::pow(cfg.adam_beta1, step);
  const double v_corr = 1.0 - std::pow(cfg.adam_beta2, step);
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    const double m_hat = m[i] / m_corr;
    const double v_hat = v[i] / v_corr;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
  }
}

TrainedModel train(const std::vector<dataset::Sample>& train_set,
                   const std::vector<dataset::Sample>& test_set, const TrainConfig& config) {
  config.validate();
  if (train_set.empty()) throw std::invalid_argument("train: empty training set");

  const qcore::CircuitSpec spec = benchmark_spec(config.layers);

  auto rng = std::mt19937_64(config.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  Vector theta(spec.param_count());
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = angle(rng);

  const int steps_per_epoch =
      static_cast<int>((train_set.size() + config.batch_size - 1) / config.batch_size);
  const int total_steps = config.epochs * steps_per_epoch;

  AdamState adam(theta.size());
  TrainedModel model;
  model.spec = spec;
  model.history.reserve(config.epochs);

  int step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    std::size_t seen = 0;
    for (int b = 0; b < steps_per_epoch; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * config.batch_size;
      const std::size_t hi = std::min(train_set.size(), lo + config.batch_size);
      const std::span<const dataset::Sample> batch(train_set.data() + lo, hi - lo);

      const qcore::ParamVector params(spec, theta);
      std::vector<qcore::Observable> observables;
      for (int c = 0; c < spec.num_classes(); ++c)
        observables.push_back(qcore::heisenberg_observable(spec, params, c));
      const BatchSummary summary = summarize_batch(spec, observables, batch, config.eps_stab);
      if (!std::isfinite(summary.loss)) {
        std::ostringstream msg;
        msg << "train: non-finite loss at epoch " << epoch << " step " << step;
        throw std::runtime_error(msg.str());
      }
      epoch_loss += summary.loss * static_cast<double>(batch.size());
      seen += batch.size();

      const Vector grad = sweep_gradient(spec, params, summary);
      const double lr = cosine_decay(config.learning_rate, step, total_steps);
      adam.update(theta, grad, lr, config);
      ++step;
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.loss = epoch_loss / static_cast<double>(seen);
    const qcore::ParamVector params(spec, theta);
    stats.train_accuracy = accuracy(spec, params, train_set);
    stats.test_accuracy = test_set.empty() ? 0.0 : accuracy(spec, params, test_set);
    model.history.push_back(stats);
  }

  model.theta = qcore::ParamVector(spec, std::move(theta));
  return model;
}

}  // namespace xqml::training
