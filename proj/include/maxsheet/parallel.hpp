#pragma once

#include <functional>

namespace maxsheet {

// Worker count: MAXSHEET_THREADS when set (clamped to [1,64]), else hardware.
int thread_count();

// Static block partition of [0, n); results must be written to disjoint
// indices so the outcome is independent of the schedule.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace maxsheet
