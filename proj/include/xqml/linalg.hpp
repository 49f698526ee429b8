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

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace xqml {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;

/// Default tolerances for structural matrix invariants. Overridable per call
/// where a function takes an explicit tolerance.
namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kUnitary = 1e-12;
inline constexpr double kBlockConsistency = 1e-12;
inline constexpr double kEntryZero = 1e-12;
}  // namespace tol

inline bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }
inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kHermitian) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

inline bool is_unitary(const ComplexMatrix& m, double tolerance = tol::kUnitary) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix residual = m * m.adjoint();
  residual -= ComplexMatrix::Identity(m.rows(), m.cols());
  return residual.cwiseAbs().maxCoeff() <= tolerance;
}

/// Kronecker product, row-major index convention: (a ⊗ b) acts on the joint
/// space with a's indices as the most significant part.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Tr{a·b} without forming the product.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

/// Folds an angle into the principal branch (-pi, pi].
inline double fold_angle(double t) {
  double r = std::remainder(t, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

inline Vector fold_angles(const Vector& x) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = fold_angle(x[i]);
  return out;
}

}  // namespace xqml
