#pragma once

#include <cstddef>
#include <functional>

namespace aperispec {

/// Worker count: APERISPEC_THREADS if set (>= 1), otherwise the hardware concurrency.
int worker_count();

/// Runs f(i) for i in [0, n) on up to worker_count() threads. Each index is handled exactly
/// once, so callers that write results by index get deterministic output. The first exception
/// thrown by any f is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, int max_workers = 0);

}  // namespace aperispec
