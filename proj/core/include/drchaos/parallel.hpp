#pragma once

#include <cstddef>
#include <functional>

namespace drchaos {

/// Worker count: DRCHAOS_THREADS when set to a positive integer, else hardware concurrency.
unsigned worker_count();

/// Runs f(i) for i in [0, n) on up to worker_count() threads. Indices are handed
/// out in contiguous blocks; f must not touch shared mutable state. The first
/// exception thrown by any worker is rethrown on the caller thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace drchaos
