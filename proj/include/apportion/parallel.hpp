#pragma once

#include <cstddef>
#include <functional>

namespace apportion {

// Worker count: APPORTION_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int thread_cap();

// Calls fn(i) for i in [0, count) on up to thread_cap() threads. The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace apportion
