#pragma once

#include <cstddef>
#include <functional>

namespace cdprov {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Callers write
/// results into per-index slots, so output never depends on the schedule.
/// threads <= 1 runs inline. The first exception thrown is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace cdprov
