#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tripent::detail {

// TRIPENT_THREADS overrides the hardware thread count (results never depend on it).
inline unsigned worker_count(std::size_t tasks) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TRIPENT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(hw, tasks));
}

// Runs fn(i) for i in [0, tasks) on a small thread pool. Work items must write
// to disjoint outputs; the first exception is rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t tasks, Fn&& fn) {
  if (tasks == 0) return;
  const unsigned workers = worker_count(tasks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < tasks; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace tripent::detail
