#pragma once

#include <cstddef>
#include <functional>

namespace colombeau {

// Worker count: TOOL_THREADS env var if set, else hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0,n). Each index owns its output slot, so results are
// deterministic regardless of scheduling. Exceptions are rethrown (first one).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace colombeau
