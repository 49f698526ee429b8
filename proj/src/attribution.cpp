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

#include "xqml/attribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "xqml/parallel.hpp"
#include "xqml/random.hpp"

namespace xqml::attribution {

namespace {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Explanation make(Method method, int target_class, Vector values) {
  Explanation e;
  e.method = method;
  e.target_class = target_class;
  e.values = std::move(values);
  return e;
}

// x with components outside `subset` replaced by the baseline.
Vector masked_input(const Vector& x, const Vector& baseline, std::uint64_t subset) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = (subset >> i) & 1ULL ? x[i] : baseline[i];
  return out;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::kGrad: return "grad";
    case Method::kSmoothGrad: return "smooth_grad";
    case Method::kSensitivity: return "sensitivity";
    case Method::kGradXInput: return "grad_x_input";
    case Method::kTaylor1: return "taylor1";
    case Method::kIntegratedGradients: return "integrated_gradients";
    case Method::kShapleyExact: return "shapley_exact";
    case Method::kShapleySampling: return "shapley_sampling";
    case Method::kTaylorInf: return "taylor_inf";
    case Method::kQlrp: return "qlrp";
  }
  return "unknown";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : all_methods())
    if (method_name(m) == name) return m;
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{
      Method::kGrad,          Method::kSmoothGrad,       Method::kSensitivity,
      Method::kGradXInput,    Method::kTaylor1,          Method::kIntegratedGradients,
      Method::kShapleyExact,  Method::kShapleySampling,  Method::kTaylorInf,
      Method::kQlrp,
  };
  return methods;
}

void BaselineConfig::validate() const {
  require(ig_steps >= 1, "config: ig_steps must be positive");
  require(sv_samples >= 1, "config: sv_samples must be positive");
  require(smoothgrad_samples >= 1, "config: smoothgrad_samples must be positive");
  require(smoothgrad_sigma > 0.0, "config: smoothgrad_sigma must be positive");
  if (baseline.size() > 0) require(all_finite(baseline), "config: non-finite baseline");
}

Vector BaselineConfig::baseline_for(Eigen::Index dim) const {
  if (baseline.size() == 0) return Vector::Zero(dim);
  require(baseline.size() == dim, "config: baseline dimension mismatch");
  return baseline;
}

Explanation grad_explain(const Model& model, const Vector& x, int target_class) {
  return make(Method::kGrad, target_class, model.input_gradient(x, target_class));
}

Explanation smoothgrad_explain(const Model& model, const Vector& x, int target_class,
                               const BaselineConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = x.size();
  const int n = cfg.smoothgrad_samples;

  Vector sum = chunked_reduce<Vector>(
      static_cast<std::size_t>(n), Vector::Zero(d),
      [&](std::size_t lo, std::size_t hi) {
        Vector acc = Vector::Zero(d);
        for (std::size_t s = lo; s < hi; ++s) {
          auto rng = substream(cfg.rng_seed, s);
          std::normal_distribution<double> noise(0.0, cfg.smoothgrad_sigma);
          Vector perturbed(d);
          for (Eigen::Index i = 0; i < d; ++i) perturbed[i] = x[i] + noise(rng);
          acc += model.input_gradient(perturbed, target_class);
        }
        return acc;
      },
      [](Vector a, const Vector& b) { return a + b; });

  return make(Method::kSmoothGrad, target_class, sum / static_cast<double>(n));
}

Explanation sensitivity_explain(const Model& model, const Vector& x, int target_class) {
  Vector g = model.input_gradient(x, target_class);
  return make(Method::kSensitivity, target_class, g.cwiseAbs());
}

Explanation gradxinput_explain(const Model& model, const Vector& x, int target_class) {
  Vector g = model.input_gradient(x, target_class);
  return make(Method::kGradXInput, target_class, g.cwiseProduct(x));
}

Explanation taylor1_explain(const Model& model, const Vector& x, int target_class,
                            const Vector& baseline) {
  require(baseline.size() == x.size(), "taylor1: baseline dimension mismatch");
  Vector g = model.input_gradient(baseline, target_class);
  Explanation e = make(Method::kTaylor1, target_class, g.cwiseProduct(x - baseline));
  e.baseline_used = baseline;
  return e;
}

Explanation integrated_gradients_explain(const Model& model, const Vector& x, int target_class,
                                         const Vector& baseline, int steps) {
  require(baseline.size() == x.size(), "integrated_gradients: baseline dimension mismatch");
  require(steps >= 1, "integrated_gradients: steps must be positive");
  const Vector path = x - baseline;
  Vector sum = Vector::Zero(x.size());
  for (int t = 0; t < steps; ++t) {
    const double s = (t + 0.5) / steps;  // midpoint rule
    sum += model.input_gradient(baseline + s * path, target_class);
  }
  Explanation e =
      make(Method::kIntegratedGradients, target_class, path.cwiseProduct(sum / steps));
  e.baseline_used = baseline;
  return e;
}

Explanation shapley_exact(const Model& model, const Vector& x, int target_class,
                          const Vector& baseline) {
  const int d = static_cast<int>(x.size());
  require(baseline.size() == x.size(), "shapley_exact: baseline dimension mismatch");
  if (d > 12) throw std::length_error("shapley_exact: dimension exceeds coalition cap");

  const std::uint64_t subsets = 1ULL << d;
  std::vector<double> value(subsets);
  parallel_for(subsets, [&](std::size_t s) {
    value[s] = model.score(masked_input(x, baseline, s), target_class);
  });

  // weight(s) = s! (d-1-s)! / d!
  std::vector<double> weight(d);
  for (int s = 0; s < d; ++s) {
    double w = 1.0;
    for (int i = 2; i <= s; ++i) w *= i;
    for (int i = 2; i <= d - 1 - s; ++i) w *= i;
    for (int i = 2; i <= d; ++i) w /= i;
    weight[s] = w;
  }

  Vector e = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    const std::uint64_t bit = 1ULL << i;
    for (std::uint64_t s = 0; s < subsets; ++s) {
      if (s & bit) continue;
      e[i] += weight[std::popcount(s)] * (value[s | bit] - value[s]);
    }
  }
  Explanation out = make(Method::kShapleyExact, target_class, std::move(e));
  out.baseline_used = baseline;
  return out;
}

Explanation shapley_sampling(const Model& model, const Vector& x, int target_class,
                             const Vector& baseline, int samples, std::uint64_t seed) {
  const int d = static_cast<int>(x.size());
  require(baseline.size() == x.size(), "shapley_sampling: baseline dimension mismatch");
  require(samples >= 1, "shapley_sampling: sample count must be positive");

  Vector sum = chunked_reduce<Vector>(
      static_cast<std::size_t>(samples), Vector::Zero(d),
      [&](std::size_t lo, std::size_t hi) {
        Vector acc = Vector::Zero(d);
        std::vector<int> order(d);
        for (std::size_t t = lo; t < hi; ++t) {
          auto rng = substream(seed, t);
          std::iota(order.begin(), order.end(), 0);
          std::shuffle(order.begin(), order.end(), rng);
          std::uint64_t subset = 0;
          double prev = model.score(masked_input(x, baseline, subset), target_class);
          for (int i : order) {
            subset |= 1ULL << i;
            const double cur = model.score(masked_input(x, baseline, subset), target_class);
            acc[i] += cur - prev;
            prev = cur;
          }
        }
        return acc;
      },
      [](Vector a, const Vector& b) { return a + b; });

  Explanation out =
      make(Method::kShapleySampling, target_class, sum / static_cast<double>(samples));
  out.baseline_used = baseline;
  return out;
}

Explanation taylor_inf_explain(const Model& model, const Vector& x, int target_class,
                               const Vector& baseline) {
  require(baseline.size() == x.size(), "taylor_inf: baseline dimension mismatch");
  const Vector grad = model.input_gradient(baseline, target_class);
  const Vector hess = model.input_hessian_diag(baseline, target_class);
  Vector e(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double delta = x[i] - baseline[i];
    e[i] = std::sin(delta) * grad[i] + (1.0 - std::cos(delta)) * hess[i];
  }
  Explanation out = make(Method::kTaylorInf, target_class, std::move(e));
  out.baseline_used = baseline;
  out.conservation = conservation_report(out, model, x, target_class, baseline);
  return out;
}

ConservationReport conservation_report(const Explanation& expl, const Model& model,
                                       const Vector& x, int target_class, const Vector& baseline) {
  ConservationReport report;
  report.sum_relevance = expl.values.sum();
  report.function_value = model.score(x, target_class);
  report.baseline_value = model.score(baseline, target_class);
  report.residual = report.sum_relevance + report.baseline_value - report.function_value;
  return report;
}

std::optional<double> relative_error(const Explanation& expl, const Model& model, const Vector& x,
                                     int target_class) {
  const double f = model.score(x, target_class);
  if (std::abs(f) <= 1e-12) return std::nullopt;
  return std::abs(expl.values.sum() - f) / std::abs(f);
}

}  // namespace xqml::attribution
