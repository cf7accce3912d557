#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mpat {

// 0 -> hardware concurrency.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0,n). Tasks are pulled from a shared counter; each
// task must write only to its own output slot so results do not depend on
// scheduling.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::mutex err_mu;
  auto run = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!failed.exchange(true)) err = std::current_exception();
        return;
      }
    }
  };
  int k = static_cast<int>(std::min<std::size_t>(workers, n));
  pool.reserve(k);
  for (int t = 0; t < k; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failed.load() && err) std::rethrow_exception(err);
}

}  // namespace mpat
