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

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace xqml {

/// Worker count for parallel sections: hardware concurrency capped by the
/// XQML_THREADS environment variable (a value of 1 disables threading).
int worker_count();

/// Runs fn(i) for i in [0, n). Results must be written to per-index slots;
/// the iteration order is unspecified but the set of indices is exact, so
/// slot-writing patterns are bit-reproducible for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Chunked map-reduce: splits [0, n) into fixed-size chunks, evaluates chunks
/// in parallel and reduces chunk results serially in chunk order. The chunk
/// size is a constant, so the reduction order (and thus the floating-point
/// result) does not depend on the worker count.
inline constexpr std::size_t kReduceChunk = 64;

template <typename Acc, typename ChunkFn, typename ReduceFn>
Acc chunked_reduce(std::size_t n, Acc init, ChunkFn chunk_fn, ReduceFn reduce_fn) {
  const std::size_t num_chunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<Acc> partials(num_chunks, init);
  parallel_for(num_chunks, [&](std::size_t c) {
    const std::size_t lo = c * kReduceChunk;
    const std::size_t hi = std::min(n, lo + kReduceChunk);
    partials[c] = chunk_fn(lo, hi);
  });
  Acc total = init;
  for (const Acc& p : partials) total = reduce_fn(total, p);
  return total;
}

}  // namespace xqml
