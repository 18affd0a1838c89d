#pragma once

#include <cstddef>
#include <functional>

namespace weyl {

/// Upper bound on worker threads used by the library (0 = hardware concurrency).
void set_max_threads(int n);
int max_threads();

/// Run body(i) for i in [0, n). Indices are dealt out in contiguous blocks;
/// callers write results into pre-sized slots so output does not depend on
/// the schedule. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace weyl
