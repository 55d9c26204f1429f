#pragma once

#include <cstddef>
#include <functional>

namespace pcach {

/// Worker count: PCACH_THREADS if set and positive, else the hardware count.
std::size_t worker_count();

/// Runs fn(0) ... fn(n - 1) on up to worker_count() threads. Callers write
/// results into per-index slots, so output order never depends on
/// scheduling. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pcach
