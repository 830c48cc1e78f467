#pragma once

#include <cstddef>
#include <functional>

namespace fht {

/// Worker cap: FHT_THREADS when set (minimum 1), hardware concurrency
/// otherwise.
int thread_budget();

/// Runs fn(i) for i in [0, count) across up to thread_budget() threads.
/// Iterations must be independent; callers own any ordered reduction.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace fht
