#pragma once

#include <cstddef>
#include <functional>

namespace eis {

/// Worker count: EISENSTEIN_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Splits [begin, end) into one contiguous chunk per worker and runs
/// body(chunk_index, lo, hi) on each. Chunk boundaries depend only on the
/// range and the worker count; callers that need schedule-independent
/// results must reduce per-chunk outputs in chunk order or, better, make
/// each output slot owned by exactly one index.
void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body,
                     unsigned workers = 0);

}  // namespace eis
