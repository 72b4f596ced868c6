#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qgb {

/** Worker threads for parallel loops; k <= 0 restores the default (QGB_THREADS, else 1). */
void set_thread_count(int k);
int thread_count();

/**
 * Runs f(i) for i in [0, count) on thread_count() threads with a fixed
 * striding, so results written per index do not depend on scheduling.
 */
template <typename F>
void parallel_for(std::size_t count, F&& f) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qgb
