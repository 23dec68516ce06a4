#pragma once

#include <cstdint>
#include <functional>

namespace tempo {

/// Worker cap: TEMPO_THREADS when set (minimum 1), otherwise the hardware
/// concurrency reported by the standard library.
int thread_budget();

/// Runs body(i) for every i in [0, n). Iterations must be independent and
/// should write results into per-index slots so that the combined output does
/// not depend on scheduling. The first exception thrown by any worker is
/// rethrown on the calling thread.
void parallel_for(int64_t n, const std::function<void(int64_t)>& body);

}  // namespace tempo
