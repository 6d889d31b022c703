#pragma once

#include <cstddef>
#include <functional>

namespace snapinf::bench {

/// hardware_concurrency, or 1 when unknown.
std::size_t default_threads();

/// Runs body(index, worker) for every index in [0, count) on up to `threads`
/// workers. Worker ids are dense in [0, threads). The first exception thrown
/// by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t index, std::size_t worker)>& body);

}  // namespace snapinf::bench
