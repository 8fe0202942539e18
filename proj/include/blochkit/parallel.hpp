#ifndef BLOCHKIT_PARALLEL_HPP
#define BLOCHKIT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace blochkit
{

// Worker count: BLOCHKIT_WORKERS if set to a positive integer, otherwise
// the hardware concurrency (at least one).
unsigned worker_count();

// Runs body(i) for i in [0, n) on the worker pool. Each index is run exactly
// once; callers write results into slot i so aggregation order is fixed. The
// first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace blochkit

#endif
