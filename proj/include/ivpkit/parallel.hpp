#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ivpkit {

/// Worker count used when a call passes threads <= 0: IVP_THREADS if set and
/// positive, else the hardware concurrency. set_default_threads overrides both.
int default_threads();
void set_default_threads(int n);

/// Runs fn(i) for i in [0, n). Callers write results into per-index slots, so
/// output never depends on scheduling. The first exception thrown is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& fn, int threads = 0) {
  if (threads <= 0) threads = default_threads();
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ivpkit
