#pragma once

#include <cstddef>
#include <functional>

namespace prolate {

// Worker count: PROLATE_LAB_THREADS if set and positive, else the hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n) across worker threads; rethrows the first exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace prolate
