#pragma once

#include <cstddef>
#include <functional>

namespace gerbekit {

// Worker count: GERBEKIT_THREADS if set and positive, else the hardware
// concurrency (at least 1).
int thread_count();

// Calls fn(i) for i in [0, n) on up to thread_count() threads. Indices are
// handed out dynamically; fn must be safe to call concurrently.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gerbekit
