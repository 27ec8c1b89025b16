#ifndef LOUDCRIT_PARALLEL_HPP
#define LOUDCRIT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace loudcrit {

/// Worker count: LOUD_CRIT_THREADS when set to a positive integer (capped at
/// the hardware concurrency), otherwise the hardware concurrency.
[[nodiscard]] inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LOUD_CRIT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return std::min<unsigned>(hw, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      // unparsable: fall through to the default
    }
  }
  return hw;
}

/// Calls fn(i) for i in [0, n) on up to `workers` threads.  Indices are
/// handed out dynamically; the first exception is rethrown after all
/// workers stop.
template <class Fn>
void parallel_for(std::size_t n, const Fn& fn, unsigned workers = worker_count()) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace loudcrit

#endif  // LOUDCRIT_PARALLEL_HPP
