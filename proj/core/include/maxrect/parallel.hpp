#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace maxrect {

/// Runs body(worker, begin, end) on `threads` workers over a strided
/// partition of [0, n): worker w gets indices w, w + threads, ...
/// Callers merge per-worker results with an order-independent reduction.
template <class Body>
void parallel_workers(int threads, Body&& body) {
  threads = std::max(1, threads);
  if (threads == 1) {
    body(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) pool.emplace_back([&body, w] { body(w); });
  for (auto& t : pool) t.join();
}

}  // namespace maxrect
