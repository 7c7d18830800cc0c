#pragma once

#include <cstddef>
#include <functional>

namespace lpmlens {

/// Worker count used when a caller passes 0: LPM_LENS_THREADS if set,
/// otherwise the number of logical cores.
std::size_t default_thread_count();

/// Runs `body(i)` for every i in [0, n) on up to `threads` workers. Each
/// index is visited exactly once; callers write results into index-aligned
/// slots so the outcome does not depend on scheduling. The first exception
/// thrown by a worker is rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace lpmlens
