#include "gwburn/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gwburn {

int default_worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) return 1;
  return static_cast<int>(hw > 8 ? 8 : hw);
}

void parallel_for_trials(std::int64_t trials, int workers,
                         const std::function<void(std::int64_t)>& body) {
  if (trials <= 0) return;
  if (workers < 1) workers = 1;
  if (workers > trials) workers = static_cast<int>(trials);
  if (workers == 1) {
    for (std::int64_t t = 0; t < trials; ++t) body(t);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto run = [&]() {
    for (;;) {
      const std::int64_t t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= trials) return;
      if (failed.load(std::memory_order_relaxed)) return;  // stop pulling work
      try {
        body(t);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gwburn
