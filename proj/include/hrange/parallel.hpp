#pragma once

#include <cstddef>
#include <functional>

namespace hrange {

/// Worker count: HARMONIC_RANGE_THREADS if set and positive, otherwise the
/// hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) over contiguous chunks. Callers write into
/// per-index slots, so the result never depends on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hrange
