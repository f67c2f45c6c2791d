#pragma once

#include <cstddef>
#include <functional>

namespace efield {

// Worker count for parallel_for; defaults to 1.
void set_thread_count(std::size_t n);
std::size_t thread_count();

// Runs body(i) for i in [0, n) over contiguous static chunks. Each index is
// visited exactly once; callers must not write shared state across indices.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace efield
