#pragma once

#include <cstddef>
#include <functional>

namespace lipext {

/// Worker count used by parallel loops: the explicit limit if one was set,
/// else LIPEXT_THREADS, else the hardware concurrency. Always >= 1.
std::size_t thread_count();

/// Overrides LIPEXT_THREADS for this process; 0 restores the default.
void set_thread_limit(std::size_t threads);

/// Runs body(i) for every i in [0, n), split into contiguous chunks across
/// workers. Bodies must only write to per-index slots; callers reduce the
/// slots sequentially afterwards, which keeps results independent of the
/// worker count. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lipext
