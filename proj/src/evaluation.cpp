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

#include "xqml/evaluation.hpp"

#include <cmath>
#include <stdexcept>

#include "xqml/parallel.hpp"
#include "xqml/qlrp.hpp"
#include "xqml/random.hpp"

namespace xqml::evaluation {

using attribution::BaselineConfig;
using attribution::Explanation;
using attribution::Method;

std::optional<double> q_alignment(const Vector& explanation, const dataset::Mask& mask) {
  if (explanation.size() != dataset::kDim)
    throw std::invalid_argument("q_alignment: dimension mismatch");
  double total = 0.0, on_mask = 0.0;
  for (Eigen::Index i = 0; i < explanation.size(); ++i) {
    const double a = std::abs(explanation[i]);
    total += a;
    if (mask.values[i]) on_mask += a;
  }
  if (total <= 0.0) return std::nullopt;
  return on_mask / total;
}

std::optional<double> q_pearson(const Vector& explanation, const dataset::Mask& mask) {
  const Eigen::Index d = explanation.size();
  if (d != dataset::kDim) throw std::invalid_argument("q_pearson: dimension mismatch");
  double e_mean = explanation.mean();
  double m_mean = 0.0;
  for (int v : mask.values) m_mean += v;
  m_mean /= static_cast<double>(d);

  double cov = 0.0, var_e = 0.0, var_m = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double de = explanation[i] - e_mean;
    const double dm = mask.values[i] - m_mean;
    cov += de * dm;
    var_e += de * de;
    var_m += dm * dm;
  }
  if (var_e <= 0.0 || var_m <= 0.0) return std::nullopt;
  return cov / std::sqrt(var_e * var_m);
}

RocCurve roc_auc(const std::vector<std::pair<Vector, dataset::Mask>>& items, int grid) {
  if (items.empty()) throw std::invalid_argument("roc_auc: empty item set");
  if (grid < 2) throw std::invalid_argument("roc_auc: grid too small");

  std::vector<std::pair<double, double>> rates;  // (mask alignment, anti alignment)
  for (const auto& [expl, mask] : items) {
    const auto qa = q_alignment(expl, mask);
    if (!qa) continue;
    dataset::Mask anti;
    for (int i = 0; i < dataset::kDim; ++i) anti.values[i] = 1 - mask.values[i];
    const auto qa_anti = q_alignment(expl, anti);
    rates.emplace_back(*qa, qa_anti.value_or(0.0));
  }
  if (rates.empty()) throw std::invalid_argument("roc_auc: no defined alignments");
  const double n = static_cast<double>(rates.size());

  RocCurve curve;
  curve.thresholds.resize(grid);
  curve.r_plus.resize(grid);
  curve.r_minus.resize(grid);
  for (int t = 0; t < grid; ++t) {
    const double alpha = static_cast<double>(t) / (grid - 1);
    int plus = 0, minus = 0;
    for (const auto& [well, wrong] : rates) {
      if (well > alpha) ++plus;
      if (wrong > alpha) ++minus;
    }
    curve.thresholds[t] = alpha;
    curve.r_plus[t] = plus / n;
    curve.r_minus[t] = minus / n;
  }

  // Walk from the strictest threshold down, closing the curve at (1, 1);
  // both coordinates grow monotonically along the walk.
  double auc = 0.0;
  double prev_x = curve.r_minus[grid - 1];
  double prev_y = curve.r_plus[grid - 1];
  for (int t = grid - 2; t >= 0; --t) {
    const double x = curve.r_minus[t];
    const double y = curve.r_plus[t];
    auc += (x - prev_x) * (y + prev_y) / 2.0;
    prev_x = x;
    prev_y = y;
  }
  auc += (1.0 - prev_x) * (1.0 + prev_y) / 2.0;
  curve.auc = auc;
  return curve;
}

MetricAggregate aggregate(const std::vector<std::optional<double>>& values) {
  MetricAggregate agg;
  double sum = 0.0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++agg.n_used;
    } else {
      ++agg.n_excluded;
    }
  }
  if (agg.n_used == 0) return agg;
  agg.mean = sum / agg.n_used;
  double var = 0.0;
  for (const auto& v : values)
    if (v) var += (*v - agg.mean) * (*v - agg.mean);
  if (agg.n_used > 1) agg.std_error = std::sqrt(var / (agg.n_used - 1) / agg.n_used);
  return agg;
}

std::vector<ExplainedSample> explain_all(const PqcModel& model,
                                         const std::vector<dataset::Sample>& samples,
                                         Method method, const BaselineConfig& cfg) {
  cfg.validate();
  std::vector<ExplainedSample> out(samples.size());
  // qlrp parallelizes internally over matrix rows; everything else is
  // parallel over samples.
  const bool inner_parallel = method == Method::kQlrp;

  auto explain_one = [&](std::size_t i) {
    const dataset::Sample& s = samples[i];
    const Vector baseline = cfg.baseline_for(s.x.size());
    BaselineConfig per_sample = cfg;
    per_sample.rng_seed = derive_seed(cfg.rng_seed, i);
    Explanation e;
    switch (method) {
      case Method::kGrad: e = attribution::grad_explain(model, s.x, s.label); break;
      case Method::kSmoothGrad:
        e = attribution::smoothgrad_explain(model, s.x, s.label, per_sample);
        break;
      case Method::kSensitivity: e = attribution::sensitivity_explain(model, s.x, s.label); break;
      case Method::kGradXInput: e = attribution::gradxinput_explain(model, s.x, s.label); break;
      case Method::kTaylor1:
        e = attribution::taylor1_explain(model, s.x, s.label, baseline);
        break;
      case Method::kIntegratedGradients:
        e = attribution::integrated_gradients_explain(model, s.x, s.label, baseline,
                                                      cfg.ig_steps);
        break;
      case Method::kShapleyExact:
        e = attribution::shapley_exact(model, s.x, s.label, baseline);
        break;
      case Method::kShapleySampling:
        e = attribution::shapley_sampling(model, s.x, s.label, baseline, cfg.sv_samples,
                                          per_sample.rng_seed);
        break;
      case Method::kTaylorInf:
        e = attribution::taylor_inf_explain(model, s.x, s.label, baseline);
        break;
      case Method::kQlrp: e = qlrp::qlrp_explain(model, s.x, s.label); break;
    }
    out[i] = ExplainedSample{static_cast<int>(i), s.label, std::move(e),
                             model.score(s.x, s.label)};
  };

  if (inner_parallel) {
    for (std::size_t i = 0; i < samples.size(); ++i) explain_one(i);
  } else {
    parallel_for(samples.size(), explain_one);
  }
  return out;
}

MethodReport report_for(Method method, const std::vector<ExplainedSample>& explained) {
  MethodReport report;
  report.method = method;

  std::vector<std::optional<double>> qa, qp, rel;
  std::vector<std::pair<Vector, dataset::Mask>> roc_items;
  qa.reserve(explained.size());
  for (const auto& e : explained) {
    const dataset::Mask mask = dataset::ground_truth_mask(e.label);
    qa.push_back(q_alignment(e.explanation.values, mask));
    qp.push_back(q_pearson(e.explanation.values, mask));
    if (std::abs(e.function_value) < 1e-6) {
      rel.push_back(std::nullopt);
    } else {
      rel.push_back(std::abs(e.explanation.values.sum() - e.function_value) /
                    std::abs(e.function_value));
    }
    roc_items.emplace_back(e.explanation.values, mask);
  }
  report.alignment = aggregate(qa);
  report.pearson = aggregate(qp);
  report.rel_error = aggregate(rel);
  const RocCurve curve = roc_auc(roc_items);
  report.q_roc = curve.auc;
  report.roc_excluded = static_cast<int>(explained.size()) - report.alignment.n_used;
  return report;
}

SuiteReport evaluate_suite(const PqcModel& model, const std::vector<dataset::Sample>& samples,
                           const std::vector<Method>& methods, const BaselineConfig& cfg) {
  if (samples.empty()) throw std::invalid_argument("evaluate_suite: empty sample set");
  SuiteReport suite;
  suite.n_samples = static_cast<int>(samples.size());
  for (Method method : methods) {
    const auto explained = explain_all(model, samples, method, cfg);
    suite.methods.push_back(report_for(method, explained));
  }
  return suite;
}

}  // namespace xqml::evaluation
