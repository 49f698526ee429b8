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

#include "xqml/qlrp.hpp"

#include <cmath>
#include <stdexcept>

#include "xqml/parallel.hpp"

namespace xqml::qlrp {

using attribution::ConservationReport;
using attribution::Explanation;
using attribution::Method;

IntermediateRelevance linear_rule(const twinn::RealExpandedMatrix& a,
                                  const twinn::RealExpandedMatrix& m) {
  if (a.mat.rows() != m.mat.rows())
    throw std::invalid_argument("linear_rule: shape mismatch");
  return IntermediateRelevance{0.5 * a.mat.cwiseProduct(m.mat)};
}

double entry_taylor_terms(Eigen::Index i, Eigen::Index j, const Vector& x, const Vector& root,
                          int k) {
  if (root.size() != x.size())
    throw std::invalid_argument("entry_taylor_terms: root dimension mismatch");
  if (k < 0 || k >= x.size())
    throw std::invalid_argument("entry_taylor_terms: component out of range");

  const double delta = x[k] - root[k];
  const double sin_d = std::sin(delta);
  const double cos_term = 1.0 - std::cos(delta);
  if (sin_d == 0.0 && cos_term == 0.0) return 0.0;

  Vector probe = root;
  probe[k] = root[k] + kPi / 2.0;
  const double plus = twinn::feature_entry(probe, i, j);
  probe[k] = root[k] - kPi / 2.0;
  const double minus = twinn::feature_entry(probe, i, j);
  const double d1 = (plus - minus) / 2.0;

  probe[k] = root[k] + kPi;
  const double opposite = twinn::feature_entry(probe, i, j);
  const double d2 = -(twinn::feature_entry(root, i, j) - opposite) / 2.0;

  return sin_d * d1 + cos_term * d2;
}

Explanation encoding_rule(const Vector& x, const twinn::RealExpandedMatrix& a,
                          const IntermediateRelevance& r,
                          const rootfind::RootAssignment& roots) {
  const int d = roots.num_qubits;
  if (x.size() != d) throw std::invalid_argument("encoding_rule: input dimension mismatch");
  if (r.values.rows() != a.mat.rows())
    throw std::invalid_argument("encoding_rule: relevance shape mismatch");
  const Eigen::Index n = a.base_dim;
  const Vector& fx = roots.folded_input;

  // Rows are independent; per-row partial sums reduce in a fixed order.
  const Eigen::Index rows = 2 * n;
  std::vector<Vector> row_sums(rows, Vector::Zero(d));
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t row) {
    const Eigen::Index i = static_cast<Eigen::Index>(row);
    Vector& acc = row_sums[row];
    Vector root(d);
    for (Eigen::Index j = 0; j < rows; ++j) {
      const double a_ij = a.mat(i, j);
      if (std::abs(a_ij) < kZeroEntryThreshold) continue;
      const std::uint64_t k_bits = static_cast<std::uint64_t>(i % n);
      const std::uint64_t l_bits = static_cast<std::uint64_t>(j % n);
      root = fx;
      root[roots.root_component(k_bits, l_bits)] = roots.root_value(k_bits, l_bits);
      const double ratio = r.values(i, j) / a_ij;
      for (int k = 0; k < d; ++k) {
        if (fx[k] == root[k]) continue;  // sin(0) and 1-cos(0) vanish exactly
        acc[k] += entry_taylor_terms(i, j, fx, root, k) * ratio;
      }
    }
  });

  Vector e = Vector::Zero(d);
  for (const Vector& partial : row_sums) e += partial;

  Explanation out;
  out.method = Method::kQlrp;
  out.values = std::move(e);
  return out;
}

Explanation qlrp_explain(const PqcModel& model, const Vector& x, int target_class) {
  const int d = model.input_dim();
  if (x.size() != d) throw std::invalid_argument("qlrp_explain: input dimension mismatch");
  if (d > kQubitCap) throw std::length_error("qlrp_explain: dimension exceeds pipeline cap");

  const twinn::RealExpandedMatrix a = twinn::feature_matrix(x);
  const twinn::RealExpandedMatrix m = twinn::expand(model.observable(target_class).mat);
  const IntermediateRelevance r = linear_rule(a, m);
  const rootfind::RootAssignment roots = rootfind::find_root_points(x);

  Explanation out = encoding_rule(x, a, r, roots);
  out.target_class = target_class;

  ConservationReport report;
  report.sum_relevance = out.values.sum();
  report.function_value = twinn::twinn_forward(a, m);
  report.baseline_value = 0.0;  // the linear rule distributes f(x) in full
  report.residual = report.sum_relevance - report.function_value;
  out.conservation = report;
  return out;
}

}  // namespace xqml::qlrp
