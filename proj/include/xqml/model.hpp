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

#include <vector>

#include "xqml/linalg.hpp"
#include "xqml/qcore.hpp"

namespace xqml {

/// Classifier interface the attribution methods operate on. The default
/// derivative implementations use the exact shift identities
///   df/dx_k  = (f(x + pi/2 e_k) - f(x - pi/2 e_k)) / 2
///   d²f/dx_k² = -(f(x) - f(x + pi e_k)) / 2
/// valid for models that encode each input component exactly once (degree-1
/// trigonometric dependence per component). Test doubles with other
/// functional forms override them.
class Model {
 public:
  virtual ~Model() = default;
  virtual int input_dim() const = 0;
  virtual int num_classes() const = 0;
  virtual double score(const Vector& x, int target_class) const = 0;

  virtual Vector input_gradient(const Vector& x, int target_class) const;
  virtual Vector input_hessian_diag(const Vector& x, int target_class) const;
};

/// Circuit-backed classifier. The evolved readout operators are built once
/// per (spec, theta), so a score evaluation costs one encoded state plus one
/// trace contraction.
class PqcModel : public Model {
 public:
  PqcModel(qcore::CircuitSpec spec, qcore::ParamVector theta);

  int input_dim() const override { return spec_.num_qubits; }
  int num_classes() const override { return spec_.num_classes(); }
  double score(const Vector& x, int target_class) const override;

  const qcore::CircuitSpec& spec() const { return spec_; }
  const qcore::ParamVector& theta() const { return theta_; }
  const qcore::Observable& observable(int target_class) const;

 private:
  qcore::CircuitSpec spec_;
  qcore::ParamVector theta_;
  std::vector<qcore::Observable> observables_;
};

}  // namespace xqml
