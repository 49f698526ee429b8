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

namespace xqml::rootfind {

/// Per-entry root points for the encoded-state matrix. Every entry (k, l) of
/// the 2^d x 2^d grid is assigned a point that differs from the (folded)
/// source input in exactly one component, replaced by one of {0, -pi, +pi},
/// chosen so that the entry's single-variable trigonometric factor vanishes
/// there.
struct RootAssignment {
  int num_qubits = 0;
  Vector folded_input;  // source input folded into (-pi, pi] per component

  /// Replaced component and replacement value per entry, indexed k * 2^d + l.
  /// component == -1 marks an unassigned entry.
  std::vector<std::int8_t> component;
  std::vector<std::int8_t> value_code;  // 0 -> 0.0, 1 -> -pi, 2 -> +pi

  std::size_t index(std::uint64_t k, std::uint64_t l) const {
    return static_cast<std::size_t>((k << num_qubits) | l);
  }
  bool has_root(std::uint64_t k, std::uint64_t l) const {
    return component[index(k, l)] >= 0;
  }
  int root_component(std::uint64_t k, std::uint64_t l) const;
  double root_value(std::uint64_t k, std::uint64_t l) const;

  /// Folded input with the assigned component replaced. Throws
  /// std::out_of_range for unassigned entries.
  Vector root_point(std::uint64_t k, std::uint64_t l) const;
};

/// Assigns the closest grid root point to every entry of the encoded-state
/// matrix. Grid hits are the per-component distances to {0, -pi, +pi} on the
/// folded input, processed in ascending order with ties broken by (component,
/// grid) order. A hit at 0 covers entries whose bit pair at that component is
/// (0,1), (1,0) or (1,1); hits at +-pi cover the (0,0) pair. Earlier hits win.
RootAssignment find_root_points(const Vector& x);

}  // namespace xqml::rootfind
