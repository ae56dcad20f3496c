#pragma once

#include <cstddef>
#include <functional>

namespace cachepower {

/// Worker count: CACHEPOWER_THREADS when set to a positive integer,
/// hardware concurrency when unset or 0.
int effective_threads();

/// Run fn(i) for i in [0, n) across workers; joins before returning. The
/// first exception thrown by any worker is rethrown on the caller.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Sum of term(i) over [0, n), accumulated in fixed 4096-index chunks and
/// reduced in chunk order. The result is independent of the worker count.
double parallel_indexed_sum(std::size_t n, const std::function<double(std::size_t)>& term);

/// Max of term(i) over [0, n) with the given floor (order independent).
double parallel_indexed_max(std::size_t n, double floor,
                            const std::function<double(std::size_t)>& term);

}  // namespace cachepower
