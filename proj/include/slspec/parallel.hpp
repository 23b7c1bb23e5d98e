#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace slspec {

// Worker count for per-index loops. Defaults to SLSPEC_THREADS, else 1.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n) across thread_count() workers.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace slspec
