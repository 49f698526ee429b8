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

#include "xqml/rootfind.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace xqml::rootfind {

namespace {

constexpr std::array<double, 3> kGridValues{0.0, -kPi, kPi};

struct GridHit {
  double distance;
  int component;
  int grid;  // 0 -> replace by 0; 1 -> by -pi; 2 -> by +pi
};

}  // namespace

int RootAssignment::root_component(std::uint64_t k, std::uint64_t l) const {
  const std::int8_t c = component[index(k, l)];
  if (c < 0) throw std::out_of_range("root assignment: entry has no root point");
  return c;
}

double RootAssignment::root_value(std::uint64_t k, std::uint64_t l) const {
  const std::size_t idx = index(k, l);
  if (component[idx] < 0) throw std::out_of_range("root assignment: entry has no root point");
  return kGridValues[static_cast<std::size_t>(value_code[idx])];
}

Vector RootAssignment::root_point(std::uint64_t k, std::uint64_t l) const {
  Vector point = folded_input;
  point[root_component(k, l)] = root_value(k, l);
  return point;
}

RootAssignment find_root_points(const Vector& x) {
  const int d = static_cast<int>(x.size());
  if (d <= 0 || d > 16) throw std::invalid_argument("find_root_points: bad dimension");
  if (!all_finite(x)) throw std::invalid_argument("find_root_points: non-finite input");

  RootAssignment out;
  out.num_qubits = d;
  out.folded_input = fold_angles(x);

  // Distances to the per-component grid {0, -pi, +pi}, ascending; ties break
  // by (component, grid) so identical inputs always produce identical
  // assignments.
  std::vector<GridHit> hits;
  hits.reserve(3 * d);
  for (int m = 0; m < d; ++m) {
    const double v = out.folded_input[m];
    hits.push_back({std::abs(v), m, 0});
    hits.push_back({std::abs(v + kPi), m, 1});
    hits.push_back({std::abs(v - kPi), m, 2});
  }
  std::sort(hits.begin(), hits.end(), [](const GridHit& a, const GridHit& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.component != b.component) return a.component < b.component;
    return a.grid < b.grid;
  });

  // An entry is claimed by the first hit whose bit-pair class covers it: the
  // zero grid covers pairs (0,1), (1,0), (1,1) at its component, the +-pi
  // grids cover (0,0). Precomputing the earliest covering hit per component
  // makes the per-entry scan independent of the processing order.
  constexpr int kNone = std::numeric_limits<int>::max();
  std::vector<int> zero_rank(d, kNone);
  std::vector<int> pi_rank(d, kNone);
  std::vector<std::int8_t> pi_code(d, 1);
  for (int rank = 0; rank < static_cast<int>(hits.size()); ++rank) {
    const GridHit& h = hits[rank];
    if (h.grid == 0) {
      if (zero_rank[h.component] == kNone) zero_rank[h.component] = rank;
    } else if (pi_rank[h.component] == kNone) {
      pi_rank[h.component] = rank;
      pi_code[h.component] = static_cast<std::int8_t>(h.grid);
    }
  }

  const std::uint64_t dim = 1ULL << d;
  out.component.assign(static_cast<std::size_t>(dim) * dim, -1);
  out.value_code.assign(static_cast<std::size_t>(dim) * dim, 0);
  for (std::uint64_t k = 0; k < dim; ++k) {
    for (std::uint64_t l = 0; l < dim; ++l) {
      int best_rank = kNone;
      int best_m = -1;
      bool best_zero = true;
      for (int m = 0; m < d; ++m) {
        const std::uint64_t bit = 1ULL << (d - 1 - m);
        const bool pair_is_00 = !(k & bit) && !(l & bit);
        const int rank = pair_is_00 ? pi_rank[m] : zero_rank[m];
        if (rank < best_rank) {
          best_rank = rank;
          best_m = m;
          best_zero = !pair_is_00;
        }
      }
      const std::size_t idx = out.index(k, l);
      out.component[idx] = static_cast<std::int8_t>(best_m);
      out.value_code[idx] = best_zero ? std::int8_t{0} : pi_code[best_m];
    }
  }
  return out;
}

}  // namespace xqml::rootfind
