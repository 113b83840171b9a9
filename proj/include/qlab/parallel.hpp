#pragma once

#include <cstddef>
#include <functional>

namespace qlab {

/// Calls fn(i) for every i in [0, n) on up to `jobs` threads (at least one).
/// Indices are handed out in increasing order; the first exception thrown
/// by any call is rethrown once all threads have stopped.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace qlab
