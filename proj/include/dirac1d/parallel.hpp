#pragma once

#include <cstddef>
#include <functional>

namespace dirac1d {

/// Worker count used by embarrassingly parallel sweeps (default 1).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls fn(i) for i in [0, n). Each index is computed independently, so the
/// result does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dirac1d
