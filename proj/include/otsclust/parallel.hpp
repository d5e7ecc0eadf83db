#pragma once

// Minimal deterministic parallel-for: the index space is split into
// contiguous chunks over a fixed number of workers, every task writes to
// its own output slot, and exceptions are rethrown on the caller thread.

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace otsclust {

/// Worker count: explicit request > OTSCLUST_THREADS > hardware concurrency.
unsigned resolve_thread_count(unsigned requested = 0);

/// Runs fn(i) for i in [0, count); fn must only touch state owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned threads = 0);

}  // namespace otsclust
