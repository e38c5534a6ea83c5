#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace transgauss {

// Worker count: TRANSGAUSS_THREADS when set (>= 1), else hardware concurrency.
unsigned worker_count();

// Evaluates fn(i) for i in [0, count) into slot i. Slots are disjoint so the
// result is independent of scheduling; the first exception is rethrown.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, const Fn& fn) {
  std::vector<T> out(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(),
                                                           static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace transgauss
