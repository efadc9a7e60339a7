#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace rydeit {

/// Worker count: explicit value, else RYDEIT_JOBS, else hardware parallelism.
int resolve_jobs(std::optional<int> requested);

/// Calls fn(i) for i in [0, count) on up to `jobs` threads. Each index is
/// visited exactly once; callers write results into slot i, so assembly
/// order never depends on scheduling. The first exception is rethrown after
/// all workers join.
template <class Fn>
void parallel_for_indexed(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers = std::min(static_cast<std::size_t>(std::max(jobs, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace rydeit
