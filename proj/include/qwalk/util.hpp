#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <utility>
#include <vector>

namespace qwalk {

// Number of worker threads the engine may use. Defaults to the hardware
// concurrency; the QWALK_THREADS environment variable caps it (minimum 1).
inline int engine_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  int n = hw ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("QWALK_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<long>(n, cap);
  }
  return std::max(n, 1);
}

// Runs body(begin, end) over a partition of [0, n). Each worker owns a
// disjoint contiguous range, so as long as the body only writes inside its
// range the result is bit-for-bit identical for any thread count.
template <class F>
void parallel_for(long n, F&& body) {
  if (n <= 0) return;
  int threads = engine_thread_count();
  if (threads <= 1 || n < 4096) {
    body(0L, n);
    return;
  }
  long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (long begin = 0; begin < n; begin += chunk) {
    long end = std::min(n, begin + chunk);
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qwalk
