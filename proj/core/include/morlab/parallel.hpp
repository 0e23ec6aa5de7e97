#pragma once

#include <cstddef>
#include <functional>

namespace morlab {

// Worker count from MORLAB_THREADS, else the hardware concurrency.
int thread_count();

// Runs body(begin, end, worker) over contiguous chunks of [0, n). Chunk
// boundaries depend only on n and the worker count, so callers that write
// per-index results and reduce them afterwards stay deterministic.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, int)>& body);

}  // namespace morlab
