#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace salem {

// Worker count: SALEMGEN_THREADS if set and positive, else the hardware
// concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n) across workers. Callers write results by index,
// so output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Pairwise (cascade) summation in a fixed order.
double pairwise_sum(std::span<const double> values);

}  // namespace salem
