#pragma once

#include <cstddef>
#include <functional>

namespace superpos {

/// Global worker cap; 0 means hardware concurrency.
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, n) on the worker pool. Each fn(i) must write only
/// to its own slot; callers reduce the slots in index order afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace superpos
