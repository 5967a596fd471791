#pragma once

#include <cstddef>
#include <functional>

namespace chainlab {

/// Worker cap: CHAINLAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
[[nodiscard]] unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once;
/// callers write results into preallocated slots so the outcome does not
/// depend on scheduling. The first exception thrown by a body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace chainlab
