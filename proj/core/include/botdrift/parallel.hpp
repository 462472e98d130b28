#pragma once

#include <cstddef>
#include <functional>

namespace botdrift {

/// Worker count from BOTDRIFT_THREADS (>= 1), else hardware concurrency.
std::size_t thread_budget();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; callers write results into index-addressed slots so
/// output never depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = thread_budget());

}  // namespace botdrift
