#pragma once

#include <cstddef>
#include <functional>

namespace pseudoherm {

/// Worker count for internal parallelism: PSEUDOHERM_THREADS if set to a
/// positive integer, hardware concurrency when unset or 0.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into preallocated slots so output order never depends on
/// scheduling. If bodies throw, the exception from the lowest failing index is
/// rethrown; indices are handed out in increasing order, so that choice does
/// not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pseudoherm
