#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace wf {

/// Worker count: WF_THREADS when set to a positive integer, otherwise the
/// hardware concurrency. An explicit override takes precedence over both.
unsigned thread_count();
void set_thread_count_override(unsigned threads);  // 0 clears the override

/// Runs body(i) for i in [0, count) over contiguous chunks. Each index is
/// visited exactly once; callers write to disjoint slots so the result does
/// not depend on the number of workers.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t first = w * chunk;
    const std::size_t last = std::min(count, first + chunk);
    if (first >= last) break;
    pool.emplace_back([first, last, &body] {
      for (std::size_t i = first; i < last; ++i) body(i);
    });
  }
}

}  // namespace wf
