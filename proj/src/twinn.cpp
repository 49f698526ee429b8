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

#include "xqml/twinn.hpp"

#include <stdexcept>

namespace xqml::twinn {

RealExpandedMatrix::RealExpandedMatrix(RealMatrix m, double consistency_tol)
    : base_dim(m.rows() / 2), mat(std::move(m)) {
  if (mat.rows() != mat.cols() || mat.rows() % 2 != 0)
    throw std::invalid_argument("expanded matrix: must be square with even dimension");
  if (!mat.allFinite()) throw std::invalid_argument("expanded matrix: non-finite entries");
  const Eigen::Index n = base_dim;
  const double d1 = (mat.topLeftCorner(n, n) - mat.bottomRightCorner(n, n)).cwiseAbs().maxCoeff();
  const double d2 = (mat.topRightCorner(n, n) + mat.bottomLeftCorner(n, n)).cwiseAbs().maxCoeff();
  if (d1 > consistency_tol || d2 > consistency_tol)
    throw std::invalid_argument("expanded matrix: block structure violated");
}

RealExpandedMatrix expand(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("expand: input must be square");
  const Eigen::Index n = u.rows();
  RealMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = u.real();
  m.bottomRightCorner(n, n) = u.real();
  m.topRightCorner(n, n) = -u.imag();
  m.bottomLeftCorner(n, n) = u.imag();
  return RealExpandedMatrix(std::move(m));
}

RealExpandedMatrix feature_matrix(const Vector& x, int qubit_cap) {
  return expand(qcore::encode_state(x, qubit_cap).mat);
}

double feature_entry(const Vector& x, Eigen::Index i, Eigen::Index j) {
  const int d = static_cast<int>(x.size());
  const Eigen::Index n = Eigen::Index(1) << d;
  if (i < 0 || j < 0 || i >= 2 * n || j >= 2 * n)
    throw std::invalid_argument("feature_entry: index out of range");
  const bool bi = i >= n, bj = j >= n;
  const Complex g = qcore::entry_g(static_cast<std::uint64_t>(i % n),
                                   static_cast<std::uint64_t>(j % n), x);
  const double scale = 1.0 / static_cast<double>(n);
  if (bi == bj) return g.real() * scale;
  return (bi ? g.imag() : -g.imag()) * scale;
}

RealExpandedMatrix task_matrix(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta,
                               int target_class) {
  return expand(qcore::heisenberg_observable(spec, theta, target_class).mat);
}

double twinn_forward(const RealExpandedMatrix& a, const RealExpandedMatrix& m) {
  if (a.mat.rows() != m.mat.rows())
    throw std::invalid_argument("twinn_forward: dimension mismatch");
  return 0.5 * a.mat.transpose().cwiseProduct(m.mat).sum();
}

double twinn_forward(const Vector& x, const qcore::CircuitSpec& spec,
                     const qcore::ParamVector& theta, int target_class) {
  return twinn_forward(feature_matrix(x), task_matrix(spec, theta, target_class));
}

}  // namespace xqml::twinn
