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

#include "xqml/model.hpp"

#include <stdexcept>

namespace xqml {

Vector Model::input_gradient(const Vector& x, int target_class) const {
  Vector grad(x.size());
  Vector shifted = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    shifted[k] = x[k] + kPi / 2.0;
    const double plus = score(shifted, target_class);
    shifted[k] = x[k] - kPi / 2.0;
    const double minus = score(shifted, target_class);
    shifted[k] = x[k];
    grad[k] = (plus - minus) / 2.0;
  }
  return grad;
}

Vector Model::input_hessian_diag(const Vector& x, int target_class) const {
  const double center = score(x, target_class);
  Vector hess(x.size());
  Vector shifted = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    shifted[k] = x[k] + kPi;
    hess[k] = -(center - score(shifted, target_class)) / 2.0;
    shifted[k] = x[k];
  }
  return hess;
}

PqcModel::PqcModel(qcore::CircuitSpec spec, qcore::ParamVector theta)
    : spec_(std::move(spec)), theta_(std::move(theta)) {
  if (theta_.values.size() != spec_.param_count())
    throw std::invalid_argument("pqc model: parameter shape mismatch");
  observables_.reserve(spec_.num_classes());
  for (int c = 0; c < spec_.num_classes(); ++c)
    observables_.push_back(qcore::heisenberg_observable(spec_, theta_, c));
}

double PqcModel::score(const Vector& x, int target_class) const {
  return qcore::expectation(qcore::encode_state(x), observable(target_class));
}

const qcore::Observable& PqcModel::observable(int target_class) const {
  if (target_class < 0 || target_class >= num_classes())
    throw std::invalid_argument("pqc model: class out of range");
  return observables_[target_class];
}

}  // namespace xqml
