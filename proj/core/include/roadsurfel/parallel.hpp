#pragma once

#include <cstdint>
#include <functional>

namespace roadsurfel {

/// Number of workers actually used for `requested` (0 = hardware count).
int effective_threads(int requested);

/// Runs fn(block_index, begin, end) over a partition of [0, count) into
/// fixed-size blocks. The partition depends only on (count, block_size),
/// never on the worker count, so any reduction that combines per-block
/// results in block order is bitwise reproducible across thread settings.
void parallel_for_blocks(int64_t count, int64_t block_size, int threads,
                         const std::function<void(int, int64_t, int64_t)>& fn);

/// Fixed block size used for image-row partitions throughout the renderer
/// and backward pass.
inline constexpr int64_t kRowBlock = 8;

}  // namespace roadsurfel
