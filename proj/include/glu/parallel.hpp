#pragma once

#include <functional>

namespace glu {

// 0 restores the hardware default.
void set_num_threads(int n);
int num_threads();

// Runs fn(begin, end) over disjoint contiguous chunks of [0, count). Chunk
// boundaries depend only on count and the thread setting, never on timing, so
// any writes indexed by the loop variable land identically at every thread
// count. Ranges below minGrain run inline on the calling thread.
void parallel_for(int count, const std::function<void(int, int)>& fn, int minGrain = 1024);

}  // namespace glu
