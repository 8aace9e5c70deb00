#pragma once

#include <thread>
#include <vector>

namespace adadeband {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(row) for every row in [0, height). Rows are split into
/// contiguous chunks, one per worker. fn must write only to locations
/// owned by its row so results are independent of the thread count.
template <typename Fn>
void parallel_rows(int height, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || height < 2 * threads) {
    for (int y = 0; y < height; ++y) fn(y);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  int chunk = (height + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int y0 = t * chunk;
    int y1 = std::min(height, y0 + chunk);
    if (y0 >= y1) break;
    pool.emplace_back([y0, y1, &fn] {
      for (int y = y0; y < y1; ++y) fn(y);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace adadeband
