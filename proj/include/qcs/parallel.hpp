// parallel.hpp: Minimal index-parallel loop capped by QCS_THREADS

#pragma once

#include <cstddef>
#include <functional>

namespace qcs {

// Worker count: QCS_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Runs body(i) for i in [0, n). Iterations must write to disjoint outputs.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qcs
