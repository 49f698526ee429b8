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

#include "xqml/attribution.hpp"
#include "xqml/model.hpp"
#include "xqml/rootfind.hpp"
#include "xqml/twinn.hpp"

namespace xqml::qlrp {

/// Dense simulation cap for this pipeline (the expanded matrices hold
/// 4^(d+1) real entries).
inline constexpr int kQubitCap = 10;

/// Entries of A(x) below this magnitude carry no relevance and are skipped
/// (the 0/0 = 0 convention of the encoding rule).
inline constexpr double kZeroEntryThreshold = 1e-12;

/// Relevance distributed over the expanded feature matrix.
struct IntermediateRelevance {
  RealMatrix values;  // shaped like A(x)
  double total() const { return values.sum(); }
};

/// Elementwise product R_ij = 1/2 A_ij M_ij. The 1/2 trace normalization is
/// absorbed here so that the total relevance equals the class score exactly.
IntermediateRelevance linear_rule(const twinn::RealExpandedMatrix& a,
                                  const twinn::RealExpandedMatrix& m);

/// Single-variable update term of entry (i, j) of A along component k,
/// anchored at the entry's root point:
///   T_k = sin(x_k - root_k) dA_ij/dx_k(root)
///       + (1 - cos(x_k - root_k)) d²A_ij/dx_k²(root).
/// Derivatives are evaluated through shifted standalone entry evaluations,
/// never through dense matrices.
double entry_taylor_terms(Eigen::Index i, Eigen::Index j, const Vector& x, const Vector& root,
                          int k);

/// Redistributes entry relevance onto input components:
///   E_k = sum_ij T_k^(ij) R_ij / A_ij,
/// skipping entries with |A_ij| below the zero threshold.
attribution::Explanation encoding_rule(const Vector& x, const twinn::RealExpandedMatrix& a,
                                       const IntermediateRelevance& r,
                                       const rootfind::RootAssignment& roots);

/// Full pipeline: feature matrix -> task matrix -> linear rule -> root
/// points -> encoding rule, with a conservation report attached.
attribution::Explanation qlrp_explain(const PqcModel& model, const Vector& x, int target_class);

}  // namespace xqml::qlrp
