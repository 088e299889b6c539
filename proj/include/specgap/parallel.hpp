#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace specgap {

/// Worker count used by parallel operator application; 0 means "all cores".
void set_worker_count(std::size_t workers);
std::size_t worker_count();

/// Splits [0, count) into contiguous chunks, one per worker, and calls
/// body(begin, end) on each. Every index is handled by exactly one worker.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_chunk = 4096) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, count / min_chunk));
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers - 1);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(std::size_t{0}, std::min(count, chunk));
}

}  // namespace specgap
