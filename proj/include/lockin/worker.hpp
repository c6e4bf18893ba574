#pragma once

#include <cstddef>
#include <functional>

namespace lockin {

// Run fn(i) for i in [0, count) with at most `workers` threads in flight.
// Each index is claimed exactly once via an atomic cursor; callers store
// results into pre-sized slots keyed by i, so the output is independent of
// the execution order. workers <= 1 runs serially on the calling thread.
// The first exception thrown by fn is rethrown after all threads join.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

} // namespace lockin
