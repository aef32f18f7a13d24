#pragma once

#include <cstddef>
#include <functional>

namespace slab {

// Worker count used by parallel_for; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, n). Each index is handled exactly once and results
// must be written to index-owned slots, so output never depends on the
// schedule. The first exception thrown by any worker is rethrown. Calls
// made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace slab
