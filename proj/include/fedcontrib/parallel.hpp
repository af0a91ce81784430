#pragma once

#include <cstddef>
#include <functional>

namespace fedcontrib {

// Worker-count policy: the FEDCONTRIB_THREADS environment variable overrides
// the requested value; anything unset or < 1 resolves to 1.
int resolve_jobs(int requested);

// Runs body(0..count-1) on up to `jobs` threads. Tasks must write only to
// their own slots; results are identical to the serial loop. The first
// exception thrown by a task is rethrown after all workers join.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace fedcontrib
