#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace skewfit {

// Chunked parallel loop over [begin, end). Each index must touch only its own
// slots; results are identical for any thread count.
inline void parallel_for(long begin, long end, int threads,
                         const std::function<void(long)>& body) {
  const long count = end - begin;
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = static_cast<int>(std::max<long>(1, std::min<long>(threads, count)));
  if (threads == 1 || count < 2) {
    for (long i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (count + threads - 1) / threads;
  for (int k = 0; k < threads; ++k) {
    const long lo = begin + k * chunk;
    const long hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace skewfit
