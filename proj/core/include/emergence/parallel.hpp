// Deterministic fork-join helper. Work items are indexed and written to
// per-index slots, so results never depend on the worker count.
#pragma once

#include <cstddef>
#include <functional>

namespace emergence {

// Worker count: EMERGENCE_THREADS when set (>= 1), else the hardware
// concurrency.
int worker_count();

// Runs fn(i) for i in [0, count). With one worker this is a plain loop;
// otherwise indices are processed by a small thread pool in chunks.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace emergence
