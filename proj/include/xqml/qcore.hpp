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
#include <vector>

#include "xqml/linalg.hpp"

namespace xqml::qcore {

/// Hard cap on dense simulation size. Matrices are 2^d x 2^d complex.
inline constexpr int kQubitCap = 12;

/// Density matrix over `num_qubits` qubits: Hermitian, PSD, unit trace.
/// Qubit 0 is the most significant bit of basis-state indices.
/// Hermiticity and the trace are validated on construction; positive
/// semi-definiteness is guaranteed by the producing operations and can be
/// checked explicitly via is_positive_semidefinite().
struct DensityMatrix {
  int num_qubits = 0;
  ComplexMatrix mat;

  DensityMatrix() = default;
  DensityMatrix(int qubits, ComplexMatrix m);

  Eigen::Index dim() const { return mat.rows(); }
  bool is_positive_semidefinite(double tolerance = tol::kPsd) const;
};

/// Hermitian measurement operator over `num_qubits` qubits.
struct Observable {
  int num_qubits = 0;
  ComplexMatrix mat;

  Observable() = default;
  Observable(int qubits, ComplexMatrix m);

  Eigen::Index dim() const { return mat.rows(); }
};

/// Circuit layout: one X-rotation encoding gate per qubit, then `num_layers`
/// trainable blocks. Each block applies a three-angle rotation
/// Rz(a)·Ry(b)·Rz(c) on every qubit followed by a ring of CNOTs
/// (control j -> target (j+1) mod d; omitted for d == 1). Class scores are
/// read out as single-qubit Z expectations on the qubits listed in
/// `observables`.
struct CircuitSpec {
  int num_qubits = 0;
  int num_layers = 0;
  std::vector<int> observables;  // Z placement per class

  CircuitSpec() = default;
  CircuitSpec(int qubits, int layers, std::vector<int> observable_qubits);

  int num_classes() const { return static_cast<int>(observables.size()); }
  int param_count() const { return num_layers * num_qubits * 3; }
};

/// Flat vector of rotation angles shaped (num_layers, num_qubits, 3).
struct ParamVector {
  Vector values;

  ParamVector() = default;
  explicit ParamVector(Vector v);
  ParamVector(const CircuitSpec& spec, Vector v);

  double angle(const CircuitSpec& spec, int layer, int qubit, int rot) const {
    return values[(static_cast<Eigen::Index>(layer) * spec.num_qubits + qubit) * 3 + rot];
  }
};

// Single-qubit gates.
ComplexMatrix rx_gate(double angle);
ComplexMatrix ry_gate(double angle);
ComplexMatrix rz_gate(double angle);

/// In-place left-multiplication of a k-local gate onto a dense matrix.
void apply_single_qubit_gate(ComplexMatrix& m, const ComplexMatrix& gate, int qubit,
                             int num_qubits);
void apply_cnot(ComplexMatrix& m, int control, int target, int num_qubits);

/// Product state ⊗_j Rx(x_j)|0><0|Rx(x_j)† for d = x.size() qubits.
DensityMatrix encode_state(const Vector& x, int qubit_cap = kQubitCap);

/// Closed-form entry <k|rho(x)|l> * 2^d of the encoded state, evaluated in
/// O(d). Bitstrings are basis indices with qubit 0 as the most significant
/// bit; entries are pure real when k xor l has even parity and pure imaginary
/// otherwise.
Complex entry_g(std::uint64_t k, std::uint64_t l, const Vector& x);

/// Full trainable block V as a dense unitary.
ComplexMatrix variational_unitary(const CircuitSpec& spec, const ParamVector& theta);

/// Diagonal of the single-qubit Z readout for a given class, as +-1 entries.
Eigen::VectorXd z_diagonal(const CircuitSpec& spec, int target_class);

/// Readout operator evolved through the trainable block: V† Z_class V.
Observable heisenberg_observable(const CircuitSpec& spec, const ParamVector& theta,
                                 int target_class);

/// Tr{rho·M}; real by Hermiticity.
double expectation(const DensityMatrix& rho, const Observable& m);

/// One score per class: Tr{rho(x) · V† Z_c V}. Each score lies in [-1, 1].
Vector model_forward(const CircuitSpec& spec, const ParamVector& theta, const Vector& x);

/// Exact first derivative of the encoded state along component k:
/// (rho(x + pi/2 e_k) - rho(x - pi/2 e_k)) / 2. Hermitian, traceless.
ComplexMatrix shift_d1_state(const Vector& x, int k);

/// Exact second derivative along component k: -(rho(x) - rho(x + pi e_k)) / 2.
ComplexMatrix shift_d2_state(const Vector& x, int k);

/// Per-component derivatives of one class score, via the shifted states.
Vector input_gradient(const CircuitSpec& spec, const ParamVector& theta, const Vector& x,
                      int target_class);
Vector input_hessian_diag(const CircuitSpec& spec, const ParamVector& theta, const Vector& x,
                          int target_class);

}  // namespace xqml::qcore
