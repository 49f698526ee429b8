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
#include <optional>
#include <string>

#include "xqml/linalg.hpp"
#include "xqml/model.hpp"

namespace xqml::attribution {

enum class Method {
  kGrad,
  kSmoothGrad,
  kSensitivity,
  kGradXInput,
  kTaylor1,
  kIntegratedGradients,
  kShapleyExact,
  kShapleySampling,
  kTaylorInf,
  kQlrp,
};

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);
const std::vector<Method>& all_methods();

/// Sum-vs-output bookkeeping for one explanation:
///   residual = sum_relevance + baseline_value - function_value.
struct ConservationReport {
  double sum_relevance = 0.0;
  double function_value = 0.0;
  double baseline_value = 0.0;
  double residual = 0.0;
};

/// Per-component relevance scores for one input and one class score.
struct Explanation {
  Vector values;
  Method method = Method::kGrad;
  int target_class = 0;
  std::optional<Vector> baseline_used;
  std::optional<ConservationReport> conservation;
};

/// Shared method configuration. The baseline doubles as the reference point
/// x-tilde for displacement-based methods; counts and sigma must be positive.
struct BaselineConfig {
  Vector baseline;  // empty means the zero vector of the input dimension
  int ig_steps = 50;
  int sv_samples = 1000;
  double smoothgrad_sigma = 0.1;
  int smoothgrad_samples = 100;
  std::uint64_t rng_seed = 0;

  void validate() const;
  Vector baseline_for(Eigen::Index dim) const;
};

Explanation grad_explain(const Model& model, const Vector& x, int target_class);

/// Monte-Carlo average of the gradient under N(0, sigma² I) input noise.
/// Noise substreams are derived per sample index, so any parallel split
/// reproduces the serial result bit-exactly.
Explanation smoothgrad_explain(const Model& model, const Vector& x, int target_class,
                               const BaselineConfig& cfg);

Explanation sensitivity_explain(const Model& model, const Vector& x, int target_class);

Explanation gradxinput_explain(const Model& model, const Vector& x, int target_class);

/// Gradient at the baseline times displacement.
Explanation taylor1_explain(const Model& model, const Vector& x, int target_class,
                            const Vector& baseline);

/// Midpoint-rule path integral of the gradient from the baseline to x.
Explanation integrated_gradients_explain(const Model& model, const Vector& x, int target_class,
                                         const Vector& baseline, int steps);

/// Exact enumeration over all feature coalitions; requires d <= 12.
Explanation shapley_exact(const Model& model, const Vector& x, int target_class,
                          const Vector& baseline);

/// Unbiased permutation-sampling estimator of the exact coalition values.
Explanation shapley_sampling(const Model& model, const Vector& x, int target_class,
                             const Vector& baseline, int samples, std::uint64_t seed);

/// Per-component score T_i = sin(x_i - b_i) df/dx_i(b) + (1 - cos(x_i - b_i))
/// d²f/dx_i²(b), the full single-variable series of a degree-1 trigonometric
/// model collapsed in closed form. Attaches a conservation report.
Explanation taylor_inf_explain(const Model& model, const Vector& x, int target_class,
                               const Vector& baseline);

ConservationReport conservation_report(const Explanation& expl, const Model& model,
                                       const Vector& x, int target_class, const Vector& baseline);

/// |sum_i E_i - f(x)| / |f(x)|; empty when |f(x)| <= 1e-12 (flagged-undefined,
/// excluded from aggregates).
std::optional<double> relative_error(const Explanation& expl, const Model& model, const Vector& x,
                                     int target_class);

}  // namespace xqml::attribution
