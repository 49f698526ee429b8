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

#include "xqml/linalg.hpp"
#include "xqml/qcore.hpp"

namespace xqml::twinn {

/// Real 2N x 2N expansion of an N x N complex matrix with block layout
/// [[Re, -Im], [Im, Re]]. The expansion is a ring homomorphism, so matrix
/// products and traces of Hermitian inputs carry over (trace doubles).
struct RealExpandedMatrix {
  Eigen::Index base_dim = 0;  // N
  RealMatrix mat;             // 2N x 2N

  RealExpandedMatrix() = default;
  explicit RealExpandedMatrix(RealMatrix m,
                              double consistency_tol = tol::kBlockConsistency);
};

/// Block expansion of a complex matrix.
RealExpandedMatrix expand(const ComplexMatrix& u);

/// Expanded encoded state A(x) = expand(rho(x)).
RealExpandedMatrix feature_matrix(const Vector& x, int qubit_cap = qcore::kQubitCap);

/// Single entry of A(x) computed standalone in O(d). Index layout: entry
/// (i, j) of the 2N x 2N matrix maps to the complex entry (i mod N, j mod N)
/// and picks its real or (sign-adjusted) imaginary part per block.
double feature_entry(const Vector& x, Eigen::Index i, Eigen::Index j);

/// Expanded evolved readout M(theta) = expand(V† Z_class V).
RealExpandedMatrix task_matrix(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                               int target_class);

/// Forward pass of the twin: 1/2 Tr{A(x) M(theta)}. Equals the quantum
/// expectation Tr{rho(x) · V† Z_c V}.
double twinn_forward(const Vector& x, const qcore::CircuitSpec& spec,
                     const qcore::ParamVector& theta, int target_class);

/// Same contraction for prebuilt factors.
double twinn_forward(const RealExpandedMatrix& a, const RealExpandedMatrix& m);

}  // namespace xqml::twinn
