#pragma once

#include <cstddef>
#include <functional>

namespace subplanck::parallel {

// Number of worker threads grids and profiles are split across:
// hardware_concurrency(), capped by the SUBPLANCK_THREADS environment
// variable when it parses as a positive integer.  Always >= 1.
int worker_count();

// Run fn(i) for i in [0, n) across worker_count() threads.  Work is handed
// out in small chunks from a shared atomic counter so uneven per-index cost
// (log-domain fallbacks, contour-adjacent bisection) balances out.  The
// first exception thrown by any worker is rethrown on the calling thread
// after all workers have joined; remaining indices may be skipped.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace subplanck::parallel
