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

#include "xqml/qcore.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace xqml::qcore {

namespace {

// Bit of `qubit` in basis index `k`; qubit 0 is the most significant bit.
inline int qubit_bit(std::uint64_t k, int qubit, int num_qubits) {
  return static_cast<int>((k >> (num_qubits - 1 - qubit)) & 1ULL);
}

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

DensityMatrix::DensityMatrix(int qubits, ComplexMatrix m) : num_qubits(qubits), mat(std::move(m)) {
  require(num_qubits > 0, "density matrix: qubit count must be positive");
  const Eigen::Index n = Eigen::Index(1) << num_qubits;
  require(mat.rows() == n && mat.cols() == n, "density matrix: dimension mismatch");
  require(all_finite(mat), "density matrix: non-finite entries");
  require(is_hermitian(mat, tol::kHermitian), "density matrix: not Hermitian");
  require(std::abs(mat.trace() - Complex(1.0, 0.0)) <= tol::kTrace,
          "density matrix: trace must be 1");
}

bool DensityMatrix::is_positive_semidefinite(double tolerance) const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tolerance;
}

Observable::Observable(int qubits, ComplexMatrix m) : num_qubits(qubits), mat(std::move(m)) {
  require(num_qubits > 0, "observable: qubit count must be positive");
  const Eigen::Index n = Eigen::Index(1) << num_qubits;
  require(mat.rows() == n && mat.cols() == n, "observable: dimension mismatch");
  require(all_finite(mat), "observable: non-finite entries");
  require(is_hermitian(mat, tol::kHermitian), "observable: not Hermitian");
}

CircuitSpec::CircuitSpec(int qubits, int layers, std::vector<int> observable_qubits)
    : num_qubits(qubits), num_layers(layers), observables(std::move(observable_qubits)) {
  require(num_qubits > 0, "circuit: qubit count must be positive");
  require(num_layers >= 0, "circuit: layer count must be non-negative");
  require(static_cast<int>(observables.size()) <= num_qubits,
          "circuit: class count exceeds qubit count");
  for (int q : observables)
    require(q >= 0 && q < num_qubits, "circuit: observable qubit out of range");
}

ParamVector::ParamVector(Vector v) : values(std::move(v)) {
  require(all_finite(values), "parameters: non-finite angle");
}

ParamVector::ParamVector(const CircuitSpec& spec, Vector v) : ParamVector(std::move(v)) {
  require(values.size() == spec.param_count(), "parameters: length mismatch");
}

ComplexMatrix rx_gate(double angle) {
  require(std::isfinite(angle), "rx_gate: non-finite angle");
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  ComplexMatrix g(2, 2);
  g << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
  return g;
}

ComplexMatrix ry_gate(double angle) {
  require(std::isfinite(angle), "ry_gate: non-finite angle");
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  ComplexMatrix g(2, 2);
  g << Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0);
  return g;
}

ComplexMatrix rz_gate(double angle) {
  require(std::isfinite(angle), "rz_gate: non-finite angle");
  ComplexMatrix g = ComplexMatrix::Zero(2, 2);
  g(0, 0) = std::polar(1.0, -angle / 2.0);
  g(1, 1) = std::polar(1.0, angle / 2.0);
  return g;
}

void apply_single_qubit_gate(ComplexMatrix& m, const ComplexMatrix& gate, int qubit,
                             int num_qubits) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index stride = Eigen::Index(1) << (num_qubits - 1 - qubit);
  const Complex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index r0 = base + off;
      const Eigen::Index r1 = r0 + stride;
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const Complex a = m(r0, c);
        const Complex b = m(r1, c);
        m(r0, c) = g00 * a + g01 * b;
        m(r1, c) = g10 * a + g11 * b;
      }
    }
  }
}

void apply_cnot(ComplexMatrix& m, int control, int target, int num_qubits) {
  require(control != target, "cnot: control equals target");
  const Eigen::Index dim = m.rows();
  const std::uint64_t cmask = 1ULL << (num_qubits - 1 - control);
  const std::uint64_t tmask = 1ULL << (num_qubits - 1 - target);
  for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(dim); ++r) {
    if ((r & cmask) && !(r & tmask)) m.row(r).swap(m.row(r | tmask));
  }
}

DensityMatrix encode_state(const Vector& x, int qubit_cap) {
  const int d = static_cast<int>(x.size());
  require(d > 0, "encode_state: empty input");
  require(all_finite(x), "encode_state: non-finite input");
  if (d > qubit_cap) throw std::length_error("encode_state: qubit count exceeds cap");

  ComplexMatrix rho = ComplexMatrix::Constant(1, 1, Complex(1.0, 0.0));
  for (int j = 0; j < d; ++j) {
    const ComplexMatrix g = rx_gate(x[j]);
    ComplexMatrix single(2, 2);
    // Rx|0><0|Rx† from the first gate column.
    single(0, 0) = g(0, 0) * std::conj(g(0, 0));
    single(0, 1) = g(0, 0) * std::conj(g(1, 0));
    single(1, 0) = g(1, 0) * std::conj(g(0, 0));
    single(1, 1) = g(1, 0) * std::conj(g(1, 0));
    rho = kron(rho, single);
  }
  return DensityMatrix(d, std::move(rho));
}

Complex entry_g(std::uint64_t k, std::uint64_t l, const Vector& x) {
  const int d = static_cast<int>(x.size());
  require(d > 0 && d < 64, "entry_g: bad dimension");
  const std::uint64_t dim = 1ULL << d;
  require(k < dim && l < dim, "entry_g: bitstring length mismatch");

  double prod = 1.0;
  for (int j = 0; j < d; ++j) {
    const int kj = qubit_bit(k, j, d);
    const int lj = qubit_bit(l, j, d);
    const double delta = (kj == lj) ? 1.0 : 0.0;
    prod *= delta + std::cos(x[j] - (kPi / 2.0) * (kj + lj));
  }
  switch ((3 * std::popcount(k) + std::popcount(l)) % 4) {
    case 0: return Complex(prod, 0.0);
    case 1: return Complex(0.0, prod);
    case 2: return Complex(-prod, 0.0);
    default: return Complex(0.0, -prod);
  }
}

ComplexMatrix variational_unitary(const CircuitSpec& spec, const ParamVector& theta) {
  require(theta.values.size() == spec.param_count(), "variational_unitary: parameter shape");
  const int d = spec.num_qubits;
  const Eigen::Index dim = Eigen::Index(1) << d;
  ComplexMatrix v = ComplexMatrix::Identity(dim, dim);
  for (int layer = 0; layer < spec.num_layers; ++layer) {
    for (int q = 0; q < d; ++q) {
      const ComplexMatrix rot = rz_gate(theta.angle(spec, layer, q, 0)) *
                                ry_gate(theta.angle(spec, layer, q, 1)) *
                                rz_gate(theta.angle(spec, layer, q, 2));
      apply_single_qubit_gate(v, rot, q, d);
    }
    if (d > 1) {
      for (int q = 0; q < d; ++q) apply_cnot(v, q, (q + 1) % d, d);
    }
  }
  return v;
}

Eigen::VectorXd z_diagonal(const CircuitSpec& spec, int target_class) {
  require(target_class >= 0 && target_class < spec.num_classes(),
          "z_diagonal: class out of range");
  const int q = spec.observables[target_class];
  const Eigen::Index dim = Eigen::Index(1) << spec.num_qubits;
  Eigen::VectorXd z(dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    z[k] = qubit_bit(static_cast<std::uint64_t>(k), q, spec.num_qubits) ? -1.0 : 1.0;
  return z;
}

Observable heisenberg_observable(const CircuitSpec& spec, const ParamVector& theta,
                                 int target_class) {
  const Eigen::VectorXd z = z_diagonal(spec, target_class);
  if (spec.num_layers == 0)  // empty gate sequence: the readout is untouched
    return Observable(spec.num_qubits, ComplexMatrix(z.cast<Complex>().asDiagonal()));
  const ComplexMatrix v = variational_unitary(spec, theta);
  ComplexMatrix m = v.adjoint() * (z.cast<Complex>().asDiagonal() * v);
  return Observable(spec.num_qubits, std::move(m));
}

double expectation(const DensityMatrix& rho, const Observable& m) {
  require(rho.dim() == m.dim(), "expectation: dimension mismatch");
  return trace_product(rho.mat, m.mat).real();
}

Vector model_forward(const CircuitSpec& spec, const ParamVector& theta, const Vector& x) {
  require(x.size() == spec.num_qubits, "model_forward: input dimension mismatch");
  const DensityMatrix rho = encode_state(x);
  const ComplexMatrix v = variational_unitary(spec, theta);
  Vector scores(spec.num_classes());
  for (int c = 0; c < spec.num_classes(); ++c) {
    const Eigen::VectorXd z = z_diagonal(spec, c);
    const ComplexMatrix m = v.adjoint() * (z.cast<Complex>().asDiagonal() * v);
    scores[c] = trace_product(rho.mat, m).real();
  }
  return scores;
}

ComplexMatrix shift_d1_state(const Vector& x, int k) {
  require(k >= 0 && k < x.size(), "shift_d1_state: component out of range");
  Vector plus = x, minus = x;
  plus[k] += kPi / 2.0;
  minus[k] -= kPi / 2.0;
  return (encode_state(plus).mat - encode_state(minus).mat) / 2.0;
}

ComplexMatrix shift_d2_state(const Vector& x, int k) {
  require(k >= 0 && k < x.size(), "shift_d2_state: component out of range");
  Vector shifted = x;
  shifted[k] += kPi;
  return (encode_state(shifted).mat - encode_state(x).mat) / 2.0;
}

Vector input_gradient(const CircuitSpec& spec, const ParamVector& theta, const Vector& x,
                      int target_class) {
  require(x.size() == spec.num_qubits, "input_gradient: input dimension mismatch");
  const Observable m = heisenberg_observable(spec, theta, target_class);
  Vector grad(x.size());
  for (int k = 0; k < x.size(); ++k)
    grad[k] = trace_product(shift_d1_state(x, k), m.mat).real();
  return grad;
}

Vector input_hessian_diag(const CircuitSpec& spec, const ParamVector& theta, const Vector& x,
                          int target_class) {
  require(x.size() == spec.num_qubits, "input_hessian_diag: input dimension mismatch");
  const Observable m = heisenberg_observable(spec, theta, target_class);
  Vector hess(x.size());
  for (int k = 0; k < x.size(); ++k)
    hess[k] = trace_product(shift_d2_state(x, k), m.mat).real();
  return hess;
}

}  // namespace xqml::qcore
