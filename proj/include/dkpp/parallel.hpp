#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dkpp {

/// Worker count for data-parallel loops.  Capped by the DKPP_THREADS
/// environment variable; defaults to the hardware concurrency (at most 8).
inline int thread_cap() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  int cap = std::clamp(hw, 1, 8);
  if (const char* env = std::getenv("DKPP_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = static_cast<int>(std::min<long>(v, 256));
  }
  return cap;
}

/// Runs fn(i) for i in [0, n) over contiguous chunks.  Every index is owned
/// by exactly one worker, so loops that write disjoint slots produce
/// bit-identical results for any thread count.  Reductions stay with the
/// caller (serial, fixed order) for the same reason.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(thread_cap(), std::max(n, 1));
  if (workers <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int lo = w * chunk;
    int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dkpp
