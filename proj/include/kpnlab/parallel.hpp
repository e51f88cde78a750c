#pragma once

#include <cstddef>
#include <functional>

namespace kpnlab {

/// KPNLAB_JOBS if set to a positive integer, else 1.
unsigned default_jobs();

/// Runs body(i) for i in [0, n) on up to `jobs` threads, interleaved
/// (thread t takes i = t, t + jobs, ...). Exceptions are rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

} // namespace kpnlab
