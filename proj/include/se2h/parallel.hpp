#pragma once

#include <cstddef>
#include <functional>

namespace se2h {

/// Worker count from the SE2H_THREADS environment variable (default 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Iterations must be independent; each
/// writes only its own outputs, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace se2h
