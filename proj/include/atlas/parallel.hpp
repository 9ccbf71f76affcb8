#pragma once

#include <cstddef>
#include <functional>

namespace atlas {

/// Worker count: ATLAS_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Iterations must write only to their own output
/// slots, so results do not depend on scheduling. The first exception thrown by
/// any iteration is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace atlas
