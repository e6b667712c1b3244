#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace skl {

// Worker count: SKLYANIN_THREADS if set and positive, else hardware threads.
inline int thread_count() {
  if (const char* env = std::getenv("SKLYANIN_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Deterministic parallel loop over [0, n): block-partitions the index range
// so results never depend on scheduling; falls back to a plain loop when a
// single worker is requested.  `body` must only write to disjoint slots.
inline void parallel_for(int n, const std::function<void(int)>& body) {
  int workers = thread_count();
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  if (workers > n) workers = n;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    int lo = static_cast<int>(static_cast<long>(n) * w / workers);
    int hi = static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace skl
