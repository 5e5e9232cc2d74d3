#pragma once

#include <functional>

namespace pspace {

int hardware_threads();

/// Runs body(i) for i in [begin, end), split into contiguous chunks across
/// up to `threads` std::threads (threads <= 1 runs inline). Exceptions from
/// workers are rethrown on the calling thread.
void parallel_for(int begin, int end, int threads, const std::function<void(int)>& body);

}  // namespace pspace
