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

#include <optional>
#include <vector>

#include "xqml/attribution.hpp"
#include "xqml/dataset.hpp"
#include "xqml/model.hpp"

namespace xqml::evaluation {

/// Share of absolute relevance landing on masked components, in [0, 1].
/// Empty (flagged-undefined) for an all-zero explanation.
std::optional<double> q_alignment(const Vector& explanation, const dataset::Mask& mask);

/// Pearson correlation between explanation and mask across components, in
/// [-1, 1]. Empty when either side has zero variance.
std::optional<double> q_pearson(const Vector& explanation, const dataset::Mask& mask);

struct RocCurve {
  std::vector<double> thresholds;
  std::vector<double> r_plus;   // fraction with mask alignment > threshold
  std::vector<double> r_minus;  // fraction with anti-mask alignment > threshold
  double auc = 0.0;
};

inline constexpr int kDefaultRocGrid = 512;

/// Threshold sweep over the pooled set: an item counts as well-explained at
/// threshold a when its mask alignment exceeds a, and as wrong-explained when
/// its alignment to the complemented mask does. The score is the area under
/// the implicit curve r_plus(r_minus), by trapezoidal integration.
RocCurve roc_auc(const std::vector<std::pair<Vector, dataset::Mask>>& items,
                 int grid = kDefaultRocGrid);

struct MetricAggregate {
  double mean = 0.0;
  double std_error = 0.0;
  int n_used = 0;
  int n_excluded = 0;
};

MetricAggregate aggregate(const std::vector<std::optional<double>>& values);

struct MethodReport {
  attribution::Method method = attribution::Method::kGrad;
  MetricAggregate alignment;
  MetricAggregate pearson;
  MetricAggregate rel_error;  // excludes |f(x)| < 1e-6
  double q_roc = 0.0;
  int roc_excluded = 0;
};

struct SuiteReport {
  std::vector<MethodReport> methods;
  int n_samples = 0;
};

/// Runs every requested method over the sample set, explaining each sample's
/// labeled class, and aggregates the three quality metrics plus the relative
/// approximation error. Per-sample RNG substreams derive from
/// (cfg.rng_seed, sample index), so the report is reproducible.
SuiteReport evaluate_suite(const PqcModel& model, const std::vector<dataset::Sample>& samples,
                           const std::vector<attribution::Method>& methods,
                           const attribution::BaselineConfig& cfg);

/// Explanations produced for one sample set, reusable across suite reporting
/// and serialization.
struct ExplainedSample {
  int sample_id = 0;
  int label = 0;
  attribution::Explanation explanation;
  double function_value = 0.0;
};

std::vector<ExplainedSample> explain_all(const PqcModel& model,
                                         const std::vector<dataset::Sample>& samples,
                                         attribution::Method method,
                                         const attribution::BaselineConfig& cfg);

MethodReport report_for(attribution::Method method,
                        const std::vector<ExplainedSample>& explained);

}  // namespace xqml::evaluation
