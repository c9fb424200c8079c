#pragma once

#include <functional>

#include "otflow/types.hpp"

namespace otflow {

/// Worker threads used by parallel loops. Controlled by the OTFLOW_THREADS
/// environment variable; unset or 0 means hardware concurrency.
unsigned worker_thread_count();

/// Runs fn(i) for i in [begin, end) on contiguous chunks across workers.
/// Callers must ensure fn(i) writes only to slot i of its outputs, which
/// keeps results identical for any thread count.
void parallel_for(Index begin, Index end, const std::function<void(Index)>& fn);

}  // namespace otflow
