#pragma once

#include <functional>

namespace stowave {

/// Runs body(0..count-1), splitting the index range over `threads` workers.
/// Bodies must write only to their own index's slot; results are then
/// independent of the scheduling, so every thread count produces identical
/// output.  threads <= 1 runs inline.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace stowave
