#pragma once

#include <cstddef>
#include <functional>

namespace fuselet {

/// Worker count for internal parallelism: FUSELET_THREADS if set to a
/// positive integer, otherwise the hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs fn(i) for i in [0, n). Each index is handled by exactly one worker
/// and writes only its own outputs, so results do not depend on the thread
/// count. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fuselet
