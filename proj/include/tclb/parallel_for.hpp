#pragma once

#include <cstddef>
#include <functional>

namespace tclb {

// Worker count: hardware concurrency, capped by TCLB_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, count). Callers write results into slot i so the
// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tclb
