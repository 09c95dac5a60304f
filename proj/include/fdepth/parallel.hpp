#pragma once

#include <cstddef>
#include <functional>

namespace fdepth {

// Worker count from FDEPTH_THREADS, falling back to hardware concurrency.
std::size_t default_thread_count();

// Static block partition of [begin, end). fn(i) must only write state owned
// by index i, so results are independent of the thread count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn,
                  std::size_t threads = 0);

}  // namespace fdepth
