#pragma once

#include <functional>

namespace criskeq {

// Runs fn(i) for i in [0, n) on up to `jobs` worker threads. Work items grab
// indices from a shared counter; results must be written to per-index slots
// so the outcome is identical for any job count. jobs <= 1 runs inline.
// The first exception thrown by any item is rethrown on the calling thread.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

// Hardware concurrency, at least 1.
int default_jobs();

}  // namespace criskeq
