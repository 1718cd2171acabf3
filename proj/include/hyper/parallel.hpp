#pragma once

#include <cstddef>
#include <functional>

namespace hyper {

// Thread count from `requested` when positive, else the HYPER_THREADS
// environment variable, else the hardware concurrency (at least 1).
unsigned resolve_threads(int requested);

// Calls fn(i) for i in [0, count) on up to `threads` workers. Work items are
// claimed dynamically; results must be written to per-index slots. The first
// exception thrown by any item is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace hyper
