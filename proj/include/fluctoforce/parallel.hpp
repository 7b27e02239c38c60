// Deterministic index-based parallelism for independent work items.
//
// Results are stored per index and reduced by the caller in index order, so
// output is bit-identical for any thread count. The worker count comes from
// FLUCTOFORCE_THREADS (default: hardware concurrency).
#pragma once

#include <cstddef>
#include <functional>

namespace fluct {

int worker_threads();

// Runs fn(i) for i in [0, n). fn must only touch its own slot of any shared
// output. If any invocation throws, the exception for the lowest index is
// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fluct
