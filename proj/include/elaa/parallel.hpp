#pragma once

#include <cstddef>
#include <functional>

namespace elaa {

/// 0 maps to the hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Calls fn(i) for every i in [0, count) on up to `threads` workers. Work
/// items are claimed dynamically; callers write results into per-index slots
/// so the outcome does not depend on scheduling. The first exception thrown
/// by any item is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace elaa
