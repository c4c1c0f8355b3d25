#pragma once

#include <cstddef>
#include <functional>

namespace hho {

/// Worker count for per-cell loops: HHO_THREADS if set, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; callers write results into per-index slots and
/// reduce them afterwards in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace hho
