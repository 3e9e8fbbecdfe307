#pragma once

#include <cstddef>
#include <functional>

namespace jetinv {

/// Worker count: JETINV_THREADS if set and positive, else the hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace jetinv
