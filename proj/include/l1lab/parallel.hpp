#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace l1lab {

// Worker cap: min(hardware, L1LAB_THREADS). Sweep points are independent
// pure computations; callers store results by index so output order never
// depends on scheduling.
inline unsigned thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("L1LAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && (unsigned long)v < hw) hw = unsigned(v);
  }
  return hw;
}

template <typename Fn>
void parallel_for(size_t count, Fn&& fn) {
  const unsigned workers = std::min<size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace l1lab
