#pragma once

#include <cstddef>
#include <functional>

namespace dlab {

// Thread cap from DISPERSIVE_LAB_THREADS (0 or unset = hardware concurrency).
int thread_limit();

// Runs fn(i) for i in [0, n).  Work is split into contiguous chunks; each
// index is processed exactly once and writes only its own slot, so results
// do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace dlab
