#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace faddeev {

// Worker count: FADDEEV_THREADS if set (clamped to >= 1), else hardware
// concurrency. This is the only environment variable the library reads.
std::size_t thread_count();

// Runs fn(i) for i in [0, n) on contiguous index blocks. Results must be
// written by index so the outcome is independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Fixed-order pairwise summation; deterministic for a given input order.
double pairwise_sum(std::span<const double> values);

}  // namespace faddeev
