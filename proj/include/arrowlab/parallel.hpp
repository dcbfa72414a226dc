#pragma once

#include <cstddef>
#include <functional>

namespace arrowlab {

/// Internal parallelism cap: the ARROWLAB_THREADS environment variable when
/// set (minimum 1), otherwise the hardware concurrency.
unsigned thread_budget();

/// Runs body(0..count-1) across up to thread_budget() workers. Callers must
/// write results into per-index slots so output is identical for any degree
/// of parallelism. The first exception thrown by a body is rethrown on the
/// calling thread after all workers join.
void parallel_for_index(std::size_t count,
                        const std::function<void(std::size_t)>& body);

} // namespace arrowlab
